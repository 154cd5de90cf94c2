//! Closed-form single-qutrit density matrices for the circularly polarized
//! drive (off resonance) and the consistent drive at exact resonance.

use std::f64::consts::SQRT_2;

use crate::elliptic::jacobi;
use crate::error::Result;
use crate::linalg::{c, from_rows, re, DensityMatrix, C64};

/// Density matrix at time `t` for the initial state `|−1⟩` under a circular
/// drive (`k = 0`) with detuning `delta = ω₀ − ω`.
///
/// `Ω = sqrt(ω₁² + δ²)` is the Rabi frequency; the lower triangle is the
/// conjugate of the upper one.
pub fn offresonance_closed_form(t: f64, delta: f64, omega1: f64, omega: f64) -> DensityMatrix {
    let big = (omega1 * omega1 + delta * delta).sqrt();
    if big == 0.0 {
        let z = re(0.0);
        return from_rows(3, &[z, z, z, z, z, z, z, z, re(1.0)]);
    }
    let o4 = big.powi(4);
    let s = (0.5 * big * t).sin();
    let co = (0.5 * big * t).cos();
    let (sin_full, cos_full) = (big * t).sin_cos();
    let w2 = omega1 * omega1;
    let x = 2.0 * delta * delta + w2 * (1.0 + cos_full);
    let ph1 = C64::from_polar(1.0, -omega * t);
    let ph2 = C64::from_polar(1.0, -2.0 * omega * t);

    let r11 = re(w2 * w2 / o4 * s.powi(4));
    let r12 = ph1 * c(delta * s, big * co) * (-SQRT_2 * omega1.powi(3) / o4 * s.powi(3));
    let r13 = ph2 * c(w2 + (2.0 * delta * delta + w2) * cos_full, -2.0 * delta * big * sin_full) * (-w2 / (2.0 * o4) * s * s);
    let r22 = re(w2 * s * s / o4 * x);
    let r23 = ph1 * c(delta * s * s, 0.5 * big * sin_full) * (-omega1 / (SQRT_2 * o4) * x);
    let r33 = re(x * x / (4.0 * o4));
    from_rows(
        3,
        &[r11, r12, r13, r12.conj(), r22, r23, r13.conj(), r23.conj(), r33],
    )
}

/// Initial conditions with a tabulated resonance solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResonanceState {
    /// The doubly stochastic pure state `(|−1⟩ + |0⟩ + |1⟩)/√3`.
    Stochastic,
    /// The middle level `|0⟩`.
    Middle,
    /// The incoherent mixture `¼|1⟩⟨1| + ½|0⟩⟨0| + ¼|−1⟩⟨−1|`.
    Weighted,
}

impl std::str::FromStr for ResonanceState {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "stochastic" => Ok(ResonanceState::Stochastic),
            "middle" => Ok(ResonanceState::Middle),
            "weighted" | "coherent" => Ok(ResonanceState::Weighted),
            other => Err(crate::error::domain(format!("unknown resonance state '{other}'"))),
        }
    }
}

impl ResonanceState {
    /// The state at `t = 0`.
    pub fn initial(&self) -> DensityMatrix {
        let third = re(1.0 / 3.0);
        let z = re(0.0);
        match self {
            ResonanceState::Stochastic => from_rows(3, &[third; 9]),
            ResonanceState::Middle => from_rows(3, &[z, z, z, z, re(1.0), z, z, z, z]),
            ResonanceState::Weighted => from_rows(3, &[re(0.25), z, z, z, re(0.5), z, z, z, re(0.25)]),
        }
    }
}

/// Exact density matrix at resonance (`δ = 0`) for one of the tabulated
/// initial states, with `f = cn(ωt|k) + i sn(ωt|k)`.
pub fn tabulated_resonance_states(which: ResonanceState, t: f64, omega1: f64, omega: f64, k: f64) -> DensityMatrix {
    let j = jacobi(omega * t, k);
    let f = c(j.cn, j.sn);
    let fi = f.conj();
    let f2 = f * f;
    let fi2 = fi * fi;
    let th = omega1 * t;
    let (s2, c2) = (2.0 * th).sin_cos();
    let sin_sq = th.sin().powi(2);
    let i = c(0.0, 1.0);
    match which {
        ResonanceState::Stochastic => {
            let d = re((c2 + 3.0) / 12.0);
            let up = c(4.0, SQRT_2 * s2) / 12.0;
            let dn = c(4.0, -SQRT_2 * s2) / 12.0;
            from_rows(
                3,
                &[
                    d,
                    fi * up,
                    fi2 * d,
                    f * dn,
                    re((3.0 - c2) / 6.0),
                    fi * dn,
                    f2 * d,
                    f * up,
                    d,
                ],
            )
        }
        ResonanceState::Middle => {
            let off = s2 / (2.0 * SQRT_2);
            from_rows(
                3,
                &[
                    re(0.5 * sin_sq),
                    -i * fi * off,
                    fi2 * (0.5 * sin_sq),
                    i * f * off,
                    re(th.cos().powi(2)),
                    i * fi * off,
                    f2 * (0.5 * sin_sq),
                    -i * f * off,
                    re(0.5 * sin_sq),
                ],
            )
        }
        ResonanceState::Weighted => {
            let off = s2 / (8.0 * SQRT_2);
            let edge = re((5.0 - c2) / 16.0);
            from_rows(
                3,
                &[
                    edge,
                    -i * fi * off,
                    fi2 * (sin_sq / 8.0),
                    i * f * off,
                    re((c2 + 3.0) / 8.0),
                    i * fi * off,
                    f2 * (sin_sq / 8.0),
                    -i * f * off,
                    edge,
                ],
            )
        }
    }
}
