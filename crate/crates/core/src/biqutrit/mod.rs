//! Two coupled qutrits.
//!
//! The pair density matrix is expanded as
//!
//! ```text
//! ϱ = (1/6) R_αβ C_α ⊗ C_β,   R_00 = 1,
//! ```
//!
//! so `Tr(ϱ C_α ⊗ C_β) = (2/3) R_αβ` and a pure state has
//! `sqrt(Σ R_αβ² − 1) = 2√2`. The Hamiltonian is written the same way,
//! `H₂ = ½ h_αβ C_α ⊗ C_β`.
//!
//! Two-qutrit basis states are ordered `|i₁ i₂⟩ ↦ 3 i₁ + i₂` with the level
//! order `(|1⟩, |0⟩, |−1⟩)` of [`crate::qutrit`] on each factor.

mod correlations;

pub use correlations::ghz_correlations;

use std::sync::OnceLock;

use crate::elliptic::jacobi;
use crate::error::{Error, Result};
use crate::linalg::{c, conjugate, eigh, identity, kron, re, trace_product, CMat, DensityMatrix};
use crate::ode::{integrate, IntegratorConfig, Trajectory};
use crate::qutrit::{hamiltonian, rotating_frame, FieldConfig};
use crate::su3::algebra;

const SQRT_2_3: f64 = 0.816_496_580_927_726;

/// Correlation tensor `R_αβ`, `α, β = 0..8`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochTensor(pub [[f64; 9]; 9]);

impl BlochTensor {
    /// The maximally mixed pair.
    pub fn mixed() -> Self {
        let mut r = [[0.0; 9]; 9];
        r[0][0] = 1.0;
        BlochTensor(r)
    }

    /// From the 80 ODE components: row-major `R_αβ` with `R_00` dropped.
    pub fn from_packed(y: &[f64]) -> Self {
        let mut r = [[0.0; 9]; 9];
        r[0][0] = 1.0;
        for (idx, &v) in y[..80].iter().enumerate() {
            let k = idx + 1;
            r[k / 9][k % 9] = v;
        }
        BlochTensor(r)
    }

    pub fn packed(&self) -> Vec<f64> {
        self.0.iter().flatten().skip(1).copied().collect()
    }

    /// `sqrt(Σ R_αβ² − 1)`.
    pub fn length(&self) -> f64 {
        let sum: f64 = self.0.iter().flatten().map(|x| x * x).sum();
        (sum - 1.0).max(0.0).sqrt()
    }

    /// `max |R_αβ − R_βα|`.
    pub fn asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for a in 0..9 {
            for b in 0..a {
                worst = worst.max((self.0[a][b] - self.0[b][a]).abs());
            }
        }
        worst
    }

    pub fn max_abs_diff(&self, other: &BlochTensor) -> f64 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

fn pair_basis(a: usize, b: usize) -> CMat {
    let alg = algebra();
    kron(alg.basis(a), alg.basis(b))
}

/// `ϱ = (1/6) R_αβ C_α ⊗ C_β`.
pub fn density_from_tensor(r: &BlochTensor) -> DensityMatrix {
    let mut rho = CMat::zeros(9, 9);
    for a in 0..9 {
        for b in 0..9 {
            if r.0[a][b] != 0.0 {
                rho += pair_basis(a, b) * re(r.0[a][b]);
            }
        }
    }
    rho / re(6.0)
}

/// `R_αβ = (3/2) Tr(ϱ C_α ⊗ C_β)`; the trace of `ϱ` must be 1 within `1e-10`.
pub fn tensor_from_density(rho: &DensityMatrix) -> Result<BlochTensor> {
    if rho.nrows() != 9 || rho.ncols() != 9 {
        return Err(Error::Dimension {
            expected: 9,
            got: rho.nrows(),
        });
    }
    let tr = rho.trace();
    if (tr - re(1.0)).norm() > 1e-10 {
        return Err(Error::Validation(format!("Tr ϱ = {tr}, expected 1")));
    }
    let mut r = [[0.0; 9]; 9];
    for (a, row) in r.iter_mut().enumerate() {
        for (b, slot) in row.iter_mut().enumerate() {
            *slot = 1.5 * trace_product(rho, &pair_basis(a, b)).re;
        }
    }
    r[0][0] = 1.0;
    Ok(BlochTensor(r))
}

/// Expansion coefficients `h_αβ` of `H₂ = ½ h_αβ C_α ⊗ C_β`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairCoeffs(pub [[f64; 9]; 9]);

impl PairCoeffs {
    /// `h_p0 = √6(h⃗, 0, 0, Q/√3, 0, d)`, `h_0p` likewise for the second
    /// qutrit, `h_11 = h_22 = h_33 = 2J`.
    pub fn from_fields(h: [f64; 3], q: f64, d: f64, h_bar: [f64; 3], q_bar: f64, d_bar: f64, j: f64) -> Self {
        let s6 = 6f64.sqrt();
        let single = |v: [f64; 3], q: f64, d: f64| [v[0], v[1], v[2], 0.0, 0.0, q / 3f64.sqrt(), 0.0, d];
        let mut out = [[0.0; 9]; 9];
        for (p, x) in single(h, q, d).into_iter().enumerate() {
            out[p + 1][0] = s6 * x;
        }
        for (p, x) in single(h_bar, q_bar, d_bar).into_iter().enumerate() {
            out[0][p + 1] = s6 * x;
        }
        for i in 1..=3 {
            out[i][i] = 2.0 * j;
        }
        PairCoeffs(out)
    }

    /// `h_αβ = ½ Tr(H₂ C_α ⊗ C_β)`.
    pub fn from_matrix(h: &CMat) -> Self {
        let mut out = [[0.0; 9]; 9];
        for (a, row) in out.iter_mut().enumerate() {
            for (b, slot) in row.iter_mut().enumerate() {
                *slot = 0.5 * trace_product(h, &pair_basis(a, b)).re;
            }
        }
        PairCoeffs(out)
    }

    /// `H₂ = ½ h_αβ C_α ⊗ C_β`.
    pub fn matrix(&self) -> CMat {
        let mut m = CMat::zeros(9, 9);
        for a in 0..9 {
            for b in 0..9 {
                if self.0[a][b] != 0.0 {
                    m += pair_basis(a, b) * re(0.5 * self.0[a][b]);
                }
            }
        }
        m
    }
}

/// Drive and coupling of a qutrit pair.
///
/// The first qutrit sees `(ω₁ cn, ω₁ sn, ω₀ dn)` and the second
/// `(ϖ₁ cn, ϖ₁ sn, ϖ₀ dn)`, both with argument `(ωt|k)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairConfig {
    pub first: FieldConfig,
    pub varpi1: f64,
    pub varpi0: f64,
    pub q_bar: f64,
    pub d_bar: f64,
    /// Isotropic exchange constant `J`.
    pub j: f64,
}

impl PairConfig {
    /// Both qutrits in the same drive `field`, exchange `j`.
    pub fn symmetric(field: FieldConfig, j: f64) -> Self {
        PairConfig {
            first: field,
            varpi1: field.omega1,
            varpi0: field.omega0,
            q_bar: field.q,
            d_bar: field.d,
            j,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.first.validate()?;
        let all = [self.varpi1, self.varpi0, self.q_bar, self.d_bar, self.j];
        if all.iter().any(|x| !x.is_finite()) {
            return Err(Error::Domain("pair parameters must be finite".into()));
        }
        Ok(())
    }

    /// Field vectors `(h⃗, h̄⃗)` at time `t`.
    pub fn fields(&self, t: f64) -> ([f64; 3], [f64; 3]) {
        let f = &self.first;
        let e = jacobi(f.omega * t, f.k);
        (
            [f.omega1 * e.cn, f.omega1 * e.sn, f.omega0 * e.dn],
            [self.varpi1 * e.cn, self.varpi1 * e.sn, self.varpi0 * e.dn],
        )
    }

    pub fn coeffs(&self, t: f64) -> PairCoeffs {
        let (h, hb) = self.fields(t);
        PairCoeffs::from_fields(h, self.first.q, self.first.d, hb, self.q_bar, self.d_bar, self.j)
    }

    fn anisotropic(&self) -> bool {
        self.first.q != 0.0 || self.first.d != 0.0 || self.q_bar != 0.0 || self.d_bar != 0.0
    }

    /// `ω = ϖ₀ = ω₀` and `ϖ₁ = ω₁`.
    pub fn at_resonance(&self) -> bool {
        let f = &self.first;
        let scale = f.omega.abs().max(1.0);
        f.at_resonance() && (self.varpi0 - f.omega).abs() <= 1e-12 * scale
    }
}

/// `H₂` at time `t`.
pub fn hamiltonian2(cfg: &PairConfig, t: f64) -> CMat {
    let (h, hb) = cfg.fields(t);
    let e = identity(3);
    let first = hamiltonian(h[0], h[1], h[2], cfg.first.q, cfg.first.d);
    let second = hamiltonian(hb[0], hb[1], hb[2], cfg.q_bar, cfg.d_bar);
    let mut m = kron(&first, &e) + kron(&e, &second);
    for s in &crate::su3::spin_matrices() {
        m += kron(s, s) * re(cfg.j);
    }
    m
}

// g_{r l n} grouped by the last index: g_by_last()[n] lists (r, l, g).
fn g_by_last() -> &'static [Vec<(usize, usize, f64)>; 9] {
    static TABLE: OnceLock<[Vec<(usize, usize, f64)>; 9]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out: [Vec<(usize, usize, f64)>; 9] = Default::default();
        for g in algebra().g_nonzero() {
            out[g.c + 1].push((g.a + 1, g.b + 1, g.value));
        }
        out
    })
}

/// Right-hand side of the 80-component system for the correlation tensor.
///
/// `r` and `out` use the packed layout of [`BlochTensor::packed`].
pub fn bloch2_rhs_into(r: &[f64], h: &PairCoeffs, out: &mut [f64]) {
    let rt = BlochTensor::from_packed(r).0;
    let h = &h.0;
    let gl = g_by_last();
    let mut d = [[0.0; 9]; 9];
    for e in algebra().e_nonzero() {
        let (p, i, m, v) = (e.a + 1, e.b + 1, e.c + 1, e.value);

        let mut first = h[p][0] * rt[i][0];
        let mut second = h[0][p] * rt[0][i];
        for l in 1..9 {
            first += h[p][l] * rt[i][l];
            second += h[l][p] * rt[l][i];
        }
        d[m][0] += SQRT_2_3 * v * first;
        d[0][m] += SQRT_2_3 * v * second;

        // e_pim [ √⅔ (h_pn R_i0 + h_p0 R_in) + g_rln h_pr R_il ]
        for n in 1..9 {
            let mut acc = SQRT_2_3 * (h[p][n] * rt[i][0] + h[p][0] * rt[i][n]);
            for &(rr, l, g) in &gl[n] {
                acc += g * h[p][rr] * rt[i][l];
            }
            d[m][n] += v * acc;
        }
        // e_pin [ √⅔ (h_mp R_0i + h_0p R_mi) + g_rlm h_rp R_li ], with n = m here
        let n = m;
        for mm in 1..9 {
            let mut acc = SQRT_2_3 * (h[mm][p] * rt[0][i] + h[0][p] * rt[mm][i]);
            for &(rr, l, g) in &gl[mm] {
                acc += g * h[rr][p] * rt[l][i];
            }
            d[mm][n] += v * acc;
        }
    }
    for (idx, slot) in out[..80].iter_mut().enumerate() {
        let k = idx + 1;
        *slot = d[k / 9][k % 9];
    }
}

pub fn bloch2_rhs(r: &BlochTensor, h: &PairCoeffs) -> Vec<f64> {
    let mut out = vec![0.0; 80];
    bloch2_rhs_into(&r.packed(), h, &mut out);
    out
}

/// `E = ⅓ Σ_{(α,β) ≠ (0,0)} h_αβ R_αβ`, equal to `Tr(H₂ ϱ)` for traceless `H₂`.
pub fn energy(r: &BlochTensor, h: &PairCoeffs) -> f64 {
    let mut sum = 0.0;
    for a in 0..9 {
        for b in 0..9 {
            if a + b > 0 {
                sum += h.0[a][b] * r.0[a][b];
            }
        }
    }
    sum / 3.0
}

/// Integrates the 80-component system for arbitrary coefficients.
pub fn evolve_pair_with<F>(
    r0: &BlochTensor,
    coeffs: F,
    t_span: (f64, f64),
    icfg: &IntegratorConfig,
    discontinuities: &[f64],
) -> Result<Trajectory>
where
    F: Fn(f64) -> PairCoeffs,
{
    integrate(
        |t, y, dy| bloch2_rhs_into(y, &coeffs(t), dy),
        &r0.packed(),
        t_span,
        icfg,
        discontinuities,
    )
}

/// Integrates the pair under the drive of `cfg`.
pub fn evolve_pair(r0: &BlochTensor, cfg: &PairConfig, t_span: (f64, f64), icfg: &IntegratorConfig) -> Result<Trajectory> {
    cfg.validate()?;
    let cfg = *cfg;
    evolve_pair_with(r0, move |t| cfg.coeffs(t), t_span, icfg, &[])
}

/// Hamiltonian in the frame `α₂ = α₁ ⊗ α₁`, with the longitudinal factor
/// `D = dn(ωt|k)` supplied by the caller. Written out entry by entry.
pub fn transformed_hamiltonian_with(cfg: &PairConfig, dn: f64) -> Result<CMat> {
    if cfg.anisotropic() {
        return Err(Error::Contract("transformed Hamiltonian needs zero anisotropy".into()));
    }
    let (w, w0, w1) = (cfg.first.omega, cfg.first.omega0, cfg.first.omega1);
    let (v0, v1) = (cfg.varpi0, cfg.varpi1);
    let j = cfg.j;
    let a = w1 / std::f64::consts::SQRT_2;
    let b = v1 / std::f64::consts::SQRT_2;
    let dd = dn;
    #[rustfmt::skip]
    let rows: [[f64; 9]; 9] = [
        [j + dd * (-2.0 * w + v0 + w0), b, 0.0, a, 0.0, 0.0, 0.0, 0.0, 0.0],
        [b, dd * (w0 - w), b, j, a, 0.0, 0.0, 0.0, 0.0],
        [0.0, b, dd * (w0 - v0) - j, 0.0, j, a, 0.0, 0.0, 0.0],
        [a, j, 0.0, dd * (v0 - w), b, 0.0, a, 0.0, 0.0],
        [0.0, a, j, b, 0.0, b, j, a, 0.0],
        [0.0, 0.0, a, 0.0, b, dd * (w - v0), 0.0, j, a],
        [0.0, 0.0, 0.0, a, j, 0.0, dd * (v0 - w0) - j, b, 0.0],
        [0.0, 0.0, 0.0, 0.0, a, j, b, dd * (w - w0), b],
        [0.0, 0.0, 0.0, 0.0, 0.0, a, 0.0, b, j + dd * (2.0 * w - v0 - w0)],
    ];
    Ok(CMat::from_fn(9, 9, |r, col| re(rows[r][col])))
}

/// Time-independent transformed Hamiltonian (`D = 1`).
///
/// Exact for a circular drive (`k = 0`), and for any `k` at resonance where
/// every `D` term vanishes.
pub fn transformed_hamiltonian(cfg: &PairConfig) -> Result<CMat> {
    if cfg.first.k != 0.0 && !cfg.at_resonance() {
        return Err(Error::Contract(
            "transformed Hamiltonian is time-dependent for k > 0 off resonance".into(),
        ));
    }
    transformed_hamiltonian_with(cfg, 1.0)
}

/// `ϱ(t) = α₂⁻¹ exp(−iH̃t) ϱ₀ exp(iH̃t) α₂`.
pub fn exact_solution_circular(rho0: &DensityMatrix, t: f64, cfg: &PairConfig) -> Result<DensityMatrix> {
    cfg.validate()?;
    if rho0.nrows() != 9 || rho0.ncols() != 9 {
        return Err(Error::Dimension {
            expected: 9,
            got: rho0.nrows(),
        });
    }
    let ht = transformed_hamiltonian(cfg)?;
    let u = eigh(&ht)?.propagator(t);
    let r = conjugate(&u, rho0);
    let a1 = rotating_frame(t, cfg.first.k, cfg.first.omega);
    let a2 = kron(&a1, &a1);
    Ok(a2.adjoint() * r * a2)
}

/// Longitudinal pulse amplitude `2(θ((t−17)(t−60)) + θ((40−t)(57−t)(t−60)))`
/// with `θ(0) = 1`.
pub fn impulse_amplitude(t: f64) -> f64 {
    let theta = |x: f64| if x >= 0.0 { 1.0 } else { 0.0 };
    2.0 * (theta((t - 17.0) * (t - 60.0)) + theta((40.0 - t) * (57.0 - t) * (t - 60.0)))
}

/// Times at which [`impulse_amplitude`] jumps.
pub const IMPULSE_EDGES: [f64; 4] = [17.0, 40.0, 57.0, 60.0];

/// Opposite longitudinal fields on the two qutrits: `(0, 0, A(t))` and
/// `(0, 0, −A(t))`.
pub fn impulse_field(t: f64) -> ([f64; 3], [f64; 3]) {
    let a = impulse_amplitude(t);
    ([0.0, 0.0, a], [0.0, 0.0, -a])
}

/// Coefficients of the characteristic cubic `x³ + c₂x² + c₁x + c₀` of the
/// zero-magnetization block for the constant fields `±ω₀` along `z`:
/// `x³ + 2Jx² − (J² + 4ω₀²)x − 2J³`.
pub fn constant_field_cubic(j: f64, omega0: f64) -> [f64; 3] {
    [2.0 * j, -(j * j + 4.0 * omega0 * omega0), -2.0 * j * j * j]
}

/// Same cubic with the linear coefficient written as `−p²`,
/// `p = sqrt(J² + ω₀²)`.
pub fn constant_field_cubic_printed(j: f64, omega0: f64) -> [f64; 3] {
    [2.0 * j, -(j * j + omega0 * omega0), -2.0 * j * j * j]
}

/// `H₂` for the constant opposite fields `(0, 0, ±ω₀)` and exchange `J`.
pub fn constant_field_hamiltonian(j: f64, omega0: f64) -> CMat {
    PairCoeffs::from_fields([0.0, 0.0, omega0], 0.0, 0.0, [0.0, 0.0, -omega0], 0.0, 0.0, j).matrix()
}

/// `x³ + c₂x² + c₁x + c₀` at `x`.
pub fn cubic_value(coeffs: &[f64; 3], x: f64) -> f64 {
    ((x + coeffs[0]) * x + coeffs[1]) * x + coeffs[2]
}

/// `|ψ⟩ = (1/√3) Σ_i |i⟩ ⊗ |i⟩` as a density matrix.
pub fn maximally_entangled() -> DensityMatrix {
    let mut psi = nalgebra::DVector::<crate::linalg::C64>::zeros(9);
    for i in 0..3 {
        psi[4 * i] = c(1.0 / 3f64.sqrt(), 0.0);
    }
    &psi * psi.adjoint()
}
