use super::*;
use crate::linalg::{commutator, max_abs_diff};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_pure(rng: &mut impl Rng) -> DensityMatrix {
    let v: Vec<_> = (0..3).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let psi = nalgebra::DVector::from_iterator(3, v.into_iter().map(|z| z / norm));
    &psi * psi.adjoint()
}

fn lab_density(traj: &Trajectory, t: f64) -> DensityMatrix {
    density_from_bloch(&BlochVector::from_components(&traj.interpolate(t)))
}

#[test]
fn basis_states_and_roundtrip() {
    let up = BlochVector::basis_state(1).unwrap();
    assert!((up.0[3] - 1.5f64.sqrt()).abs() < 1e-14);
    assert!((up.0[6] - 1.0 / SQRT_2).abs() < 1e-14);
    assert!((up.length() - SQRT_2).abs() < 1e-14);
    assert!(BlochVector::basis_state(2).is_err());

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let rho = random_pure(&mut rng);
        let v = bloch_from_density(&rho).unwrap();
        assert!((v.length() - SQRT_2).abs() < 1e-12);
        assert!(max_abs_diff(&density_from_bloch(&v), &rho) < 1e-13);
        let p = populations(&v);
        for m in 0..3 {
            assert!((p[m] - rho[(m, m)].re).abs() < 1e-13);
        }
    }
    let bad = identity(3);
    assert!(matches!(bloch_from_density(&bad), Err(Error::Validation(_))));
    assert!(matches!(bloch_from_density(&identity(2)), Err(Error::Dimension { .. })));
}

#[test]
fn bloch_rhs_matches_commutator() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let rho = random_pure(&mut rng);
        let (h1, h2, h3, q, d) = (rng.gen(), rng.gen(), rng.gen(), rng.gen(), rng.gen());
        let h = hamiltonian(h1, h2, h3, q, d);
        let drho = commutator(&h, &rho) * c(0.0, -1.0);
        let coeffs = QutritHamiltonianCoeffs::from_field(h1, h2, h3, q, d);
        let projected = QutritHamiltonianCoeffs::from_matrix(&h);
        assert!(coeffs.0.iter().zip(projected.0).all(|(a, b)| (a - b).abs() < 1e-13));
        let rhs = bloch_rhs(&bloch_from_density(&rho).unwrap(), &coeffs);
        for i in 0..8 {
            let expected = BLOCH_SCALE * trace_product(&drho, algebra().basis(i + 1)).re;
            assert!((rhs[i] - expected).abs() < 1e-12, "component {}", i + 1);
        }
    }
}

#[test]
fn hamiltonian_matches_spin_form() {
    let s = crate::su3::spin_matrices();
    let (h1, h2, h3, q, d) = (0.3, -0.7, 1.1, 0.4, -0.2);
    let e = identity(3);
    let expected = &s[0] * re(h1) + &s[1] * re(h2) + &s[2] * re(h3)
        + (&s[2] * &s[2] - e * re(2.0 / 3.0)) * re(q)
        + (&s[0] * &s[0] - &s[1] * &s[1]) * re(d);
    assert!(max_abs_diff(&hamiltonian(h1, h2, h3, q, d), &expected) < 1e-14);
}

#[test]
fn pure_state_invariants_vanish() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let rho = random_pure(&mut rng);
        let inv = motion_invariants(&bloch_from_density(&rho).unwrap());
        assert!((inv.b - SQRT_2).abs() < 1e-12);
        assert!(inv.det.abs() < 1e-12);
        assert!(inv.i1.abs() < 1e-12 && inv.i2.abs() < 1e-12);
    }
    for m in [1, 0, -1] {
        let inv = motion_invariants(&BlochVector::basis_state(m).unwrap());
        assert!(inv.i1.abs() < 1e-14 && inv.i2.abs() < 1e-14);
        assert!(inv.det.abs() < 1e-14);
    }
    let mixed = motion_invariants(&BlochVector::mixed());
    assert!((mixed.det - 1.0 / 27.0).abs() < 1e-14);
}

#[test]
fn determinant_formula_matches_matrix_determinant() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..20 {
        let a = random_pure(&mut rng);
        let b = random_pure(&mut rng);
        let w: f64 = rng.gen_range(0.0..1.0);
        let rho = a * re(w) + b * re(1.0 - w);
        let inv = motion_invariants(&bloch_from_density(&rho).unwrap());
        assert!((inv.det - rho.determinant().re).abs() < 1e-13);
    }
}

#[test]
fn resonance_solution_matches_integration() {
    let icfg = IntegratorConfig::with_tolerance(1e-11);
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for k in [0.0, 0.5, 0.85] {
        let cfg = FieldConfig {
            omega1: 0.3,
            omega: 1.0,
            omega0: 1.0,
            k,
            ..Default::default()
        };
        let rho0 = random_pure(&mut rng);
        let traj = evolve_bloch(&bloch_from_density(&rho0).unwrap(), &cfg, (0.0, 30.0), &icfg).unwrap();
        for t in [0.0, 3.7, 12.5, 30.0] {
            let exact = resonance_solution(&rho0, t, &cfg).unwrap();
            assert!(max_abs_diff(&exact, &lab_density(&traj, t)) < 1e-8, "k={k} t={t}");
        }
    }
    let off = FieldConfig {
        omega0: 1.1,
        ..Default::default()
    };
    assert!(matches!(resonance_solution(&identity(3), 1.0, &off), Err(Error::Contract(_))));
}

#[test]
fn offresonance_closed_form_matches_integration() {
    let icfg = IntegratorConfig::with_tolerance(1e-11);
    for (omega1, omega0) in [(0.4, 1.3), (0.25, 0.8), (0.5, 1.0)] {
        let cfg = FieldConfig {
            omega1,
            omega: 1.0,
            omega0,
            k: 0.0,
            ..Default::default()
        };
        let traj = evolve_bloch(&BlochVector::basis_state(-1).unwrap(), &cfg, (0.0, 25.0), &icfg).unwrap();
        for t in [0.0, 1.3, 7.9, 25.0] {
            let closed = offresonance_closed_form(t, cfg.detuning(), omega1, cfg.omega);
            assert!(max_abs_diff(&closed, &lab_density(&traj, t)) < 1e-8, "ω₀={omega0} t={t}");
        }
    }
}

#[test]
fn tabulated_states_match_resonance_solution() {
    for which in [ResonanceState::Stochastic, ResonanceState::Middle, ResonanceState::Weighted] {
        for k in [0.0, 0.7] {
            let cfg = FieldConfig {
                omega1: 0.45,
                omega: 1.2,
                omega0: 1.2,
                k,
                ..Default::default()
            };
            for t in [0.0, 0.9, 4.2, 11.0] {
                let exact = resonance_solution(&which.initial(), t, &cfg).unwrap();
                let table = tabulated_resonance_states(which, t, cfg.omega1, cfg.omega, k);
                assert!(max_abs_diff(&exact, &table) < 1e-13, "{which:?} k={k} t={t}");
            }
        }
    }
    assert_eq!("coherent".parse::<ResonanceState>().unwrap(), ResonanceState::Weighted);
    assert!("x".parse::<ResonanceState>().is_err());
}

#[test]
fn perturbation_series_converges() {
    let cfg = FieldConfig {
        omega1: 0.3,
        omega: 1.0,
        omega0: 1.05,
        k: 0.6,
        ..Default::default()
    };
    let rho0 = random_pure(&mut ChaCha8Rng::seed_from_u64(23));
    let t = 3.0;
    let traj = evolve_bloch(
        &bloch_from_density(&rho0).unwrap(),
        &cfg,
        (0.0, t),
        &IntegratorConfig::with_tolerance(1e-12),
    )
    .unwrap();
    let alpha = rotating_frame(t, cfg.k, cfg.omega);
    let r_exact = &alpha * lab_density(&traj, t) * alpha.adjoint();
    let errors: Vec<f64> = (0..3)
        .map(|l| max_abs_diff(&perturbation_series(&rho0, t, &cfg, l), &r_exact))
        .collect();
    assert!(errors[1] < 0.2 * errors[0], "{errors:?}");
    assert!(errors[2] < 0.2 * errors[1], "{errors:?}");
    assert!(errors[2] < 1e-3);
}

#[test]
fn averaged_populations_rotating_frame_agrees_with_lab() {
    let cfg = FieldConfig {
        omega1: 0.2,
        omega: 1.0,
        omega0: 1.3,
        k: 0.85,
        ..Default::default()
    };
    let icfg = IntegratorConfig::with_tolerance(1e-10);
    let tau = 60.0;
    let (pp, p0) = time_averaged_populations(&cfg, tau, &icfg).unwrap();
    // a vanishing rhombic term forces the laboratory-frame path
    let lab = FieldConfig { d: 1e-300, ..cfg };
    let (qp, q0) = time_averaged_populations(&lab, tau, &icfg).unwrap();
    // the two paths sample on different grids; agreement is limited by the trapezoid rule
    assert!((pp - qp).abs() < 1e-5 && (p0 - q0).abs() < 1e-5, "{pp} {qp} {p0} {q0}");
    assert!(time_averaged_populations(&cfg, 0.0, &icfg).is_err());
    let grid = averaged_populations(&cfg, tau, &[1.3, 2.0], &icfg).unwrap();
    assert_eq!(grid[0].ratio, 1.3);
    assert!((grid[0].p_plus - pp).abs() < 1e-14);
}
