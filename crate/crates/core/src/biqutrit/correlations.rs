//! Closed-form correlation functions for the maximally entangled initial
//! state in the consistent drive at resonance, `ω = ϖ₀ = ω₀ = h`, `ϖ₁ = ω₁`.

use super::BlochTensor;
use crate::elliptic::jacobi;

/// `R_αβ(t)` with `u = (ht|k)`.
///
/// Only the upper triangle is tabulated; `R_βα = R_αβ` because the state
/// and Hamiltonian are symmetric under particle exchange. Entries given in
/// terms of others (`R₁₈`, `R₂₄`, `R₂₅`, `R₂₆`, `R₂₈`, `R₃₅`) are filled
/// from those relations.
pub fn ghz_correlations(t: f64, j: f64, omega1: f64, h: f64, k: f64) -> BlochTensor {
    let e = jacobi(h * t, k);
    let (sn, cn) = (e.sn, e.cn);
    let d2 = cn * cn - sn * sn;
    let w = omega1 * t;
    let (sw, cw) = w.sin_cos();
    let cw2 = cw * cw;
    let cw4 = cw2 * cw2;
    let (s2, c2) = (2.0 * w).sin_cos();
    let (s4, c4) = (4.0 * w).sin_cos();
    let (s3j, c3j) = (3.0 * j * t).sin_cos();
    let sh = (1.5 * j * t).sin().powi(2);
    let cm = ((3.0 * j - 2.0 * omega1) * t).cos();
    let cp = ((3.0 * j + 2.0 * omega1) * t).cos();
    let r23 = (2.0f64 / 3.0).sqrt();
    let s3 = 3f64.sqrt();

    let mut r = [[0.0; 9]; 9];
    r[0][0] = 1.0;

    // single-qutrit functions R_0m
    r[0][4] = 8.0 / 3.0 * r23 * cw2 * cn * sn * sh;
    r[0][5] = -4.0 / 3.0 * r23 * cn * sh * s2;
    r[0][6] = 2.0 / 9.0 * std::f64::consts::SQRT_2 * (3.0 * c2 - 1.0) * sh;
    r[0][7] = 4.0 / 3.0 * r23 * sn * s2 * sh;
    r[0][8] = 4.0 / 3.0 * r23 * cw2 * (1.0 - 2.0 * sn * sn) * sh;

    r[1][1] = (16.0 + 12.0 * (c3j + 2.0) * d2 * cw2 + 2.0 * c3j - 3.0 * cm - 12.0 * c2 - 3.0 * cp) / 36.0;
    r[1][2] = 2.0 / 3.0 * (c3j + 2.0) * cn * sn * cw2;
    r[1][3] = (c3j + 2.0) * sn * s2 / 3.0;
    r[1][4] = sn * s3j * s2 / 3.0;
    r[1][5] = (2.0 * d2 * cw2 + 3.0 * c2 - 1.0) * s3j / 6.0;
    r[1][6] = cn * s3j * s2 / s3;
    r[1][7] = -2.0 / 3.0 * cw2 * cn * sn * s3j;
    r[1][8] = r[1][6] / s3;

    r[2][2] = (6.0 * (c3j + 2.0) * (sn * sn - cn * cn) * cw2 + c3j - 3.0 * (c3j + 2.0) * c2 + 8.0) / 18.0;
    r[2][3] = -(c3j + 2.0) * cn * s2 / 3.0;
    r[2][4] = r[1][6] / s3;
    r[2][5] = -r[1][7];
    r[2][6] = s3 * r[1][4];
    r[2][7] = (2.0 * d2 * cw2 - 3.0 * c2 + 1.0) * s3j / 6.0;
    r[2][8] = -r[2][6] / s3;

    r[3][3] = (-2.0 * c3j + 3.0 * cm + 12.0 * c2 + 3.0 * cp + 2.0) / 18.0;
    r[3][4] = -2.0 / 3.0 * cw2 * d2 * s3j;
    r[3][5] = -r[1][4];
    r[3][6] = 0.0;
    r[3][7] = -cn * s3j * s2 / 3.0;
    r[3][8] = 4.0 / 3.0 * cw2 * cn * sn * s3j;

    r[4][4] = (-72.0 * (1.0 - 8.0 * cn * cn * sn * sn) * cw4 + 8.0 * c3j - 12.0 * (2.0 * c3j + 1.0) * c2
        + 9.0 * c4
        + 19.0)
        / 72.0;
    r[4][5] = sn
        * (24.0 * (sn * sn - 3.0 * cn * cn) * sw * cw2 * cw + 2.0 * (2.0 * c3j + 1.0) * s2 - 3.0 * s4)
        / 12.0;
    r[4][6] = -2.0 / (3.0 * s3) * cw2 * (2.0 * c3j - 9.0 * c2 + 7.0) * cn * sn;
    r[4][7] = cn
        * (-24.0 * (cn * cn - 3.0 * sn * sn) * sw * cw2 * cw - 2.0 * (2.0 * c3j + 1.0) * s2 + 3.0 * s4)
        / 12.0;
    r[4][8] = 4.0 * cw4 * cn * sn * d2;

    r[5][5] = (6.0 * (c3j + 6.0 * c2 - 4.0) * (sn * sn - cn * cn) * cw2 - c3j + 3.0 * (c3j + 2.0) * c2
        - 9.0 * c4
        + 1.0)
        / 18.0;
    r[5][6] = cn * (4.0 * sh * s2 - 9.0 * s4) / (6.0 * s3);
    r[5][7] = (2.0 * c3j + cm + 4.0 * c2 + 6.0 * c4 + cp - 2.0) * cn * sn / 6.0;
    r[5][8] = cn
        * (-24.0 * (cn * cn - 3.0 * sn * sn) * sw * cw2 * cw + 2.0 * (2.0 * c3j + 1.0) * s2 - 3.0 * s4)
        / 12.0;

    r[6][6] = (-4.0 * c3j + 6.0 * cm - 12.0 * c2 + 27.0 * c4 + 6.0 * cp + 13.0) / 36.0;
    r[6][7] = sn * (2.0 * (c3j - 1.0) * s2 + 9.0 * s4) / (6.0 * s3);
    r[6][8] = cw2 * (-2.0 * c3j + 9.0 * c2 - 7.0) * d2 / (3.0 * s3);

    r[7][7] = ((c3j - 1.0) * (3.0 * cn * cn - 3.0 * sn * sn - 1.0)
        + 9.0 * c4 * (d2 - 1.0)
        + 3.0 * (c3j + 2.0) * c2 * (d2 + 1.0))
        / 18.0;
    r[7][8] = sn * (6.0 * (3.0 * cn * cn - sn * sn) * cw2 + 2.0 * c3j - 3.0 * c2 + 1.0) * s2 / 6.0;

    r[8][8] = (72.0 * (1.0 - 8.0 * cn * cn * sn * sn) * cw4 + 8.0 * c3j - 12.0 * (2.0 * c3j + 1.0) * c2
        + 9.0 * c4
        + 19.0)
        / 72.0;

    for a in 0..9 {
        for b in 0..a {
            r[a][b] = r[b][a];
        }
    }
    BlochTensor(r)
}
