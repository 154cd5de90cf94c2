//! Single-qutrit dynamics.
//!
//! A qutrit density matrix is expanded over the basis of [`crate::su3`] as
//!
//! ```text
//! ρ = (1/√6) Σ_α R_α C_α,   R_0 = 1,
//! ```
//!
//! so that `R_i = sqrt(3/2) Tr(ρ C_i)` and a pure state has Bloch length
//! `b = sqrt(Σ R_i²) = √2`. Under `i ∂_t ρ = [H, ρ]` with
//! `H = ½ Σ h_i C_i` the components obey the real linear system
//! `∂_t R_l = e_ijl h_i R_j`.

mod closed_form;
mod perturbation;
mod populations;

pub use closed_form::{offresonance_closed_form, tabulated_resonance_states, ResonanceState};
pub use perturbation::{perturbation_series, perturbation_term, zeroth_order};
pub use populations::{averaged_populations, default_tau, time_averaged_populations, PopulationPoint};

use std::f64::consts::SQRT_2;

use crate::elliptic::jacobi;
use crate::error::{Error, Result};
use crate::linalg::{c, conjugate, diag, identity, re, trace_product, CMat, DensityMatrix};
use crate::ode::{integrate, IntegratorConfig, Trajectory};
use crate::su3::algebra;

/// `sqrt(3/2)`: converts `Tr(ρ C_i)` into the Bloch component `R_i`.
pub(crate) const BLOCH_SCALE: f64 = 1.224_744_871_391_589;

/// Nine real components `R_0 .. R_8` with `R_0 = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector(pub [f64; 9]);

impl BlochVector {
    /// The maximally mixed state.
    pub fn mixed() -> Self {
        let mut r = [0.0; 9];
        r[0] = 1.0;
        BlochVector(r)
    }

    /// From the eight components `R_1 .. R_8`.
    pub fn from_components(c8: &[f64]) -> Self {
        let mut r = [0.0; 9];
        r[0] = 1.0;
        r[1..].copy_from_slice(&c8[..8]);
        BlochVector(r)
    }

    /// `R_1 .. R_8`.
    pub fn components(&self) -> &[f64] {
        &self.0[1..]
    }

    /// Bloch length `b = sqrt(Σ_i R_i²)`.
    pub fn length(&self) -> f64 {
        self.components().iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Basis state `|m⟩`, `m ∈ {1, 0, -1}`.
    pub fn basis_state(m: i32) -> Result<Self> {
        let idx = level_index(m)?;
        let mut rho = CMat::zeros(3, 3);
        rho[(idx, idx)] = re(1.0);
        bloch_from_density(&rho)
    }
}

/// Row/column index of the level `|m⟩` in the `(|1⟩, |0⟩, |-1⟩)` ordering.
pub fn level_index(m: i32) -> Result<usize> {
    match m {
        1 => Ok(0),
        0 => Ok(1),
        -1 => Ok(2),
        _ => Err(Error::Domain(format!("qutrit level {m} not in {{1, 0, -1}}"))),
    }
}

/// `ρ = (1/√6) Σ_α R_α C_α`.
pub fn density_from_bloch(v: &BlochVector) -> DensityMatrix {
    let alg = algebra();
    let mut rho = CMat::zeros(3, 3);
    for (a, &r) in v.0.iter().enumerate() {
        if r != 0.0 {
            rho += alg.basis(a) * re(r);
        }
    }
    rho / re(6f64.sqrt())
}

/// `R_i = sqrt(3/2) Tr(ρ C_i)`. The trace of `ρ` must be 1 within `1e-10`.
pub fn bloch_from_density(rho: &DensityMatrix) -> Result<BlochVector> {
    if rho.nrows() != 3 || rho.ncols() != 3 {
        return Err(Error::Dimension {
            expected: 3,
            got: rho.nrows(),
        });
    }
    let tr = rho.trace();
    if (tr - re(1.0)).norm() > 1e-10 {
        return Err(Error::Validation(format!("Tr ρ = {tr}, expected 1")));
    }
    let alg = algebra();
    let mut r = [0.0; 9];
    r[0] = 1.0;
    for (i, slot) in r.iter_mut().enumerate().skip(1) {
        *slot = BLOCH_SCALE * trace_product(rho, alg.basis(i)).re;
    }
    Ok(BlochVector(r))
}

/// `H = h₁S₁ + h₂S₂ + h₃S₃ + Q(S₃² − ⅔E) + d(S₁² − S₂²)`.
pub fn hamiltonian(h1: f64, h2: f64, h3: f64, q: f64, d: f64) -> CMat {
    let alg = algebra();
    alg.basis(1) * re(h1)
        + alg.basis(2) * re(h2)
        + alg.basis(3) * re(h3)
        + alg.basis(6) * re(q / 3f64.sqrt())
        + alg.basis(8) * re(d)
}

/// Expansion `H = ½ Σ h_i C_i`, i.e. `h = 2(h₁, h₂, h₃, 0, 0, Q/√3, 0, d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QutritHamiltonianCoeffs(pub [f64; 8]);

impl QutritHamiltonianCoeffs {
    pub fn from_field(h1: f64, h2: f64, h3: f64, q: f64, d: f64) -> Self {
        QutritHamiltonianCoeffs([
            2.0 * h1,
            2.0 * h2,
            2.0 * h3,
            0.0,
            0.0,
            2.0 * q / 3f64.sqrt(),
            0.0,
            2.0 * d,
        ])
    }

    /// Projects a traceless Hermitian `H` onto the basis: `h_i = Tr(H C_i)`.
    pub fn from_matrix(h: &CMat) -> Self {
        let alg = algebra();
        let mut out = [0.0; 8];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = trace_product(h, alg.basis(i + 1)).re;
        }
        QutritHamiltonianCoeffs(out)
    }
}

/// Writes `∂_t R_l = e_ijl h_i R_j` for `l = 1..8` into `out`.
pub fn bloch_rhs_into(r: &[f64], h: &QutritHamiltonianCoeffs, out: &mut [f64]) {
    out[..8].fill(0.0);
    for e in algebra().e_nonzero() {
        out[e.c] += e.value * h.0[e.a] * r[e.b];
    }
}

/// Right-hand side of the eight-component Bloch system.
pub fn bloch_rhs(v: &BlochVector, h: &QutritHamiltonianCoeffs) -> [f64; 8] {
    let mut out = [0.0; 8];
    bloch_rhs_into(v.components(), h, &mut out);
    out
}

/// Drive parameters for a single qutrit (frequencies in rad per unit time).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldConfig {
    /// Transverse amplitude `ω₁`.
    pub omega1: f64,
    /// Drive frequency `ω`.
    pub omega: f64,
    /// Longitudinal (Larmor) amplitude `ω₀`.
    pub omega0: f64,
    /// Elliptic modulus `k ∈ [0, 1]`.
    pub k: f64,
    /// Axial anisotropy `Q`.
    pub q: f64,
    /// Rhombic anisotropy `d`.
    pub d: f64,
}

impl Default for FieldConfig {
    fn default() -> Self {
        FieldConfig {
            omega1: 0.0,
            omega: 1.0,
            omega0: 1.0,
            k: 0.0,
            q: 0.0,
            d: 0.0,
        }
    }
}

impl FieldConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.k) {
            return Err(Error::Domain(format!("elliptic modulus {} not in [0, 1]", self.k)));
        }
        let all = [self.omega1, self.omega, self.omega0, self.q, self.d];
        if all.iter().any(|x| !x.is_finite()) {
            return Err(Error::Domain("field parameters must be finite".into()));
        }
        Ok(())
    }

    /// Detuning `δ = ω₀ − ω`.
    pub fn detuning(&self) -> f64 {
        self.omega0 - self.omega
    }

    pub fn at_resonance(&self) -> bool {
        self.detuning().abs() <= 1e-12 * self.omega.abs().max(1.0)
    }

    /// Hamiltonian coefficients of the consistent field at time `t`.
    pub fn coeffs(&self, t: f64) -> QutritHamiltonianCoeffs {
        let [h1, h2, h3] = consistent_field(t, self);
        QutritHamiltonianCoeffs::from_field(h1, h2, h3, self.q, self.d)
    }
}

/// `h(t) = (ω₁ cn(ωt|k), ω₁ sn(ωt|k), ω₀ dn(ωt|k))`.
pub fn consistent_field(t: f64, cfg: &FieldConfig) -> [f64; 3] {
    let j = jacobi(cfg.omega * t, cfg.k);
    [cfg.omega1 * j.cn, cfg.omega1 * j.sn, cfg.omega0 * j.dn]
}

/// `α₁ = diag(f, 1, 1/f)` with `f = cn(ωt|k) + i sn(ωt|k)`, `|f| = 1`.
pub fn rotating_frame(t: f64, k: f64, omega: f64) -> CMat {
    let j = jacobi(omega * t, k);
    let f = c(j.cn, j.sn);
    diag(&[f, re(1.0), f.conj()])
}

/// `exp(-i θ S₁)` from `S₁³ = S₁`: `E − i sin θ S₁ + (cos θ − 1) S₁²`.
pub fn s1_rotation(theta: f64) -> CMat {
    let s1 = algebra().basis(1);
    let s1sq = s1 * s1;
    identity(3) - s1 * c(0.0, theta.sin()) + s1sq * re(theta.cos() - 1.0)
}

/// Exact evolution at resonance:
/// `ρ(t) = α₁⁻¹ exp(−iω₁tS₁) ρ₀ exp(iω₁tS₁) α₁`.
///
/// Requires `ω = ω₀` and no anisotropy; anything else is rejected.
pub fn resonance_solution(rho0: &DensityMatrix, t: f64, cfg: &FieldConfig) -> Result<DensityMatrix> {
    cfg.validate()?;
    if !cfg.at_resonance() {
        return Err(Error::Contract(format!(
            "resonance solution needs ω = ω₀ (got ω = {}, ω₀ = {})",
            cfg.omega, cfg.omega0
        )));
    }
    if cfg.q != 0.0 || cfg.d != 0.0 {
        return Err(Error::Contract("resonance solution needs Q = d = 0".into()));
    }
    let r = conjugate(&s1_rotation(cfg.omega1 * t), rho0);
    let alpha = rotating_frame(t, cfg.k, cfg.omega);
    Ok(alpha.adjoint() * r * alpha)
}

/// Motion invariants of a single-qutrit state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MotionInvariants {
    /// Bloch length.
    pub b: f64,
    /// First quadric pure-state invariant (zero on pure states).
    pub i1: f64,
    /// Second quadric pure-state invariant (zero on pure states).
    pub i2: f64,
    /// `det ρ = (Tr ρ³ − Tr ρ²)/3 + (2 − b²)/18`.
    pub det: f64,
}

pub fn motion_invariants(v: &BlochVector) -> MotionInvariants {
    let r = &v.0;
    let b = v.length();
    let i1 = r[1] * r[1] - r[2] * r[2] + r[5] * r[5] - r[7] * r[7]
        - 2.0 * (2.0f64 / 3.0).sqrt() * (1.0 - SQRT_2 * r[6]) * r[8];
    let i2 = r[5] * r[7] - r[1] * r[2] + 2.0 / 3f64.sqrt() * (1.0 / SQRT_2 - r[6]) * r[4];
    let rho = density_from_bloch(v);
    let rho2 = &rho * &rho;
    let tr2 = rho2.trace().re;
    let tr3 = trace_product(&rho2, &rho).re;
    let det = (tr3 - tr2) / 3.0 + (2.0 - b * b) / 18.0;
    MotionInvariants { b, i1, i2, det }
}

/// `(⟨S₁⟩, ⟨S₂⟩, ⟨S₃⟩) = sqrt(2/3) (R₁, R₂, R₃)`.
pub fn spin_expectations(v: &BlochVector) -> [f64; 3] {
    let s = 1.0 / BLOCH_SCALE;
    [s * v.0[1], s * v.0[2], s * v.0[3]]
}

/// Level populations `(P⁺, P⁰, P⁻)` read from the Bloch components.
pub fn populations(v: &BlochVector) -> [f64; 3] {
    let r = &v.0;
    let p_plus = 1.0 / 3.0 + r[3] / 6f64.sqrt() + r[6] / (3.0 * SQRT_2);
    let p_zero = 1.0 / 3.0 - SQRT_2 / 3.0 * r[6];
    [p_plus, p_zero, 1.0 - p_plus - p_zero]
}

/// Integrates the Bloch system for an arbitrary time-dependent Hamiltonian
/// given by its coefficients.
pub fn evolve_bloch_with<F>(
    v0: &BlochVector,
    coeffs: F,
    t_span: (f64, f64),
    icfg: &IntegratorConfig,
    discontinuities: &[f64],
) -> Result<Trajectory>
where
    F: Fn(f64) -> QutritHamiltonianCoeffs,
{
    integrate(
        |t, y, dy| bloch_rhs_into(y, &coeffs(t), dy),
        v0.components(),
        t_span,
        icfg,
        discontinuities,
    )
}

/// Integrates the Bloch system in the laboratory frame under the consistent
/// field of `cfg`.
pub fn evolve_bloch(v0: &BlochVector, cfg: &FieldConfig, t_span: (f64, f64), icfg: &IntegratorConfig) -> Result<Trajectory> {
    cfg.validate()?;
    let cfg = *cfg;
    evolve_bloch_with(v0, move |t| cfg.coeffs(t), t_span, icfg, &[])
}

#[cfg(test)]
mod tests;
