//! Detuning expansion of the rotating-frame equation
//! `i ∂_t r = [ω₁S₁ + δ dn(ωt|k) S₃, r]`, `r(0) = ρ₀`.
//!
//! Each order is obtained from the previous one by
//! `r⁽ˡ⁾(t) = −iδ ∫₀ᵗ U(t−t') dn(ωt'|k) [S₃, r⁽ˡ⁻¹⁾(t')] U(t−t')† dt'`
//! with `U(τ) = exp(−iω₁τS₁)`.

use super::{s1_rotation, FieldConfig};
use crate::elliptic::jacobi;
use crate::linalg::{c, commutator, conjugate, CMat, DensityMatrix};
use crate::quad::adaptive_simpson;
use crate::su3::algebra;

const QUAD_TOL: f64 = 1e-10;

/// `r⁽⁰⁾(t) = exp(−iω₁tS₁) ρ₀ exp(iω₁tS₁)`.
pub fn zeroth_order(rho0: &DensityMatrix, t: f64, omega1: f64) -> CMat {
    conjugate(&s1_rotation(omega1 * t), rho0)
}

fn flatten(m: &CMat) -> Vec<f64> {
    m.iter().flat_map(|z| [z.re, z.im]).collect()
}

fn unflatten(v: &[f64]) -> CMat {
    CMat::from_iterator(3, 3, v.chunks(2).map(|p| c(p[0], p[1])))
}

/// One term of the series from the previous order `prev(t')`, evaluated by
/// adaptive Simpson quadrature.
pub fn perturbation_term(prev: &dyn Fn(f64) -> CMat, t: f64, cfg: &FieldConfig) -> CMat {
    let delta = cfg.detuning();
    if delta == 0.0 || t == 0.0 {
        return CMat::zeros(3, 3);
    }
    let s3 = algebra().basis(3);
    let integrand = |tp: f64| -> Vec<f64> {
        let dn = jacobi(cfg.omega * tp, cfg.k).dn;
        let inner = commutator(s3, &prev(tp)) * c(dn, 0.0);
        flatten(&conjugate(&s1_rotation(cfg.omega1 * (t - tp)), &inner))
    };
    let integral = unflatten(&adaptive_simpson(&integrand, 0.0, t, QUAD_TOL));
    integral * c(0.0, -delta)
}

fn term(order: usize, rho0: &DensityMatrix, t: f64, cfg: &FieldConfig) -> CMat {
    if order == 0 {
        zeroth_order(rho0, t, cfg.omega1)
    } else {
        perturbation_term(&|tp| term(order - 1, rho0, tp, cfg), t, cfg)
    }
}

/// Rotating-frame solution summed through `order` (inclusive). The
/// laboratory-frame state is `α₁⁻¹ r α₁`.
pub fn perturbation_series(rho0: &DensityMatrix, t: f64, cfg: &FieldConfig, order: usize) -> CMat {
    (0..=order).fold(CMat::zeros(3, 3), |acc, l| acc + term(l, rho0, t, cfg))
}
