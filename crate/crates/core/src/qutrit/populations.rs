//! Long-time averaged level populations.

use std::f64::consts::PI;

use rayon::prelude::*;

use super::{bloch_rhs_into, populations, BlochVector, FieldConfig, QutritHamiltonianCoeffs};
use crate::elliptic::jacobi;
use crate::error::{Error, Result};
use crate::ode::{integrate, IntegratorConfig};

/// Averages at one value of `ω₀/ω`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PopulationPoint {
    pub ratio: f64,
    pub p_plus: f64,
    pub p_zero: f64,
}

/// Default averaging horizon: 400 drive periods.
pub fn default_tau(omega: f64) -> f64 {
    400.0 * 2.0 * PI / omega.abs()
}

/// `(P⁺, P⁰)` averaged over `[0, τ]` for the initial state `|−1⟩`.
///
/// Without rhombic anisotropy the populations are the same in the frame
/// rotating with `α₁`, where the effective field is `(ω₁, 0, δ dn(ωt|k))`
/// and the dynamics is slow; the Bloch system is integrated there. With
/// `d ≠ 0` the laboratory frame is used. The averages are trapezoidal sums
/// over the dense output on a uniform grid.
pub fn time_averaged_populations(cfg: &FieldConfig, tau: f64, icfg: &IntegratorConfig) -> Result<(f64, f64)> {
    cfg.validate()?;
    if !(tau > 0.0) {
        return Err(Error::Domain(format!("averaging horizon must be positive, got {tau}")));
    }
    let v0 = BlochVector::basis_state(-1)?;
    let cfg = *cfg;
    let rotating = cfg.d == 0.0;
    let coeffs = move |t: f64| -> QutritHamiltonianCoeffs {
        if rotating {
            let dn = jacobi(cfg.omega * t, cfg.k).dn;
            QutritHamiltonianCoeffs::from_field(cfg.omega1, 0.0, cfg.detuning() * dn, cfg.q, 0.0)
        } else {
            cfg.coeffs(t)
        }
    };
    let traj = integrate(
        |t, y, dy| bloch_rhs_into(y, &coeffs(t), dy),
        v0.components(),
        (0.0, tau),
        icfg,
        &[],
    )?;

    let fastest = if rotating {
        cfg.omega.abs() + cfg.omega1.abs() + cfg.detuning().abs() + cfg.q.abs()
    } else {
        cfg.omega.abs() + cfg.omega1.abs() + cfg.omega0.abs() + cfg.q.abs() + cfg.d.abs()
    };
    let dt = (2.0 * PI / fastest.max(1e-3)) / 32.0;
    let n = ((tau / dt).ceil() as usize).max(2);
    let h = tau / n as f64;
    let mut sum_plus = 0.0;
    let mut sum_zero = 0.0;
    for i in 0..=n {
        let w = if i == 0 || i == n { 0.5 } else { 1.0 };
        let p = populations(&BlochVector::from_components(&traj.interpolate(i as f64 * h)));
        sum_plus += w * p[0];
        sum_zero += w * p[1];
    }
    Ok((sum_plus * h / tau, sum_zero * h / tau))
}

/// Averaged populations over a grid of `ω₀/ω`, evaluated in parallel and
/// returned in grid order.
pub fn averaged_populations(
    cfg: &FieldConfig,
    tau: f64,
    ratios: &[f64],
    icfg: &IntegratorConfig,
) -> Result<Vec<PopulationPoint>> {
    ratios
        .par_iter()
        .map(|&ratio| {
            let point = FieldConfig {
                omega0: ratio * cfg.omega,
                ..*cfg
            };
            let (p_plus, p_zero) = time_averaged_populations(&point, tau, icfg)?;
            Ok(PopulationPoint { ratio, p_plus, p_zero })
        })
        .collect()
}
