//! Invariant drift of the 80-equation pair system as a function of the
//! integrator tolerance.

use qutrit_core::biqutrit::{evolve_pair, maximally_entangled, tensor_from_density};
use qutrit_core::ode::{monitor_invariants, IntegratorConfig, InvariantKind};
use qutrit_core::verify::resonant_pair;

fn drift(tol: f64) -> f64 {
    let r0 = tensor_from_density(&maximally_entangled()).unwrap();
    let traj = evolve_pair(&r0, &resonant_pair(0.85, 0.1), (0.0, 20.0), &IntegratorConfig::with_tolerance(tol)).unwrap();
    monitor_invariants(&traj, InvariantKind::Bloch2, 1).unwrap().max_drift
}

#[test]
fn tight_tolerance_keeps_length() {
    let d = drift(1e-10);
    assert!(d < 1e-8, "drift {d:e}");
}

#[test]
fn drift_grows_with_tolerance() {
    let ds: Vec<f64> = [1e-10, 1e-7, 1e-4].iter().map(|&t| drift(t)).collect();
    assert!(ds[0] < ds[1] && ds[1] < ds[2], "{ds:?}");
    assert!(ds[2] > 1e-6);
}
