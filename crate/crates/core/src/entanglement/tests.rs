use super::*;
use crate::biqutrit::{
    ghz_correlations, density_from_tensor, exact_solution_circular, maximally_entangled, PairConfig,
};
use crate::chain::symmetric_state_2;
use crate::linalg::{c, eigh, identity, kron, max_abs_diff, re};
use crate::qutrit::FieldConfig;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_density(n: usize, rng: &mut impl Rng) -> CMat {
    let a = CMat::from_fn(n, n, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let m = &a * a.adjoint();
    let tr = m.trace();
    m / tr
}

fn resonant(j: f64, omega1: f64, k: f64) -> PairConfig {
    PairConfig::symmetric(
        FieldConfig {
            omega1,
            omega: 1.0,
            omega0: 1.0,
            k,
            ..Default::default()
        },
        j,
    )
}

#[test]
fn partial_trace_of_products_and_ghz() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let a = random_density(3, &mut rng);
    let b = random_density(3, &mut rng);
    let prod = kron(&a, &b);
    assert!(max_abs_diff(&partial_trace(&prod, 0, 2).unwrap(), &a) < 1e-15);
    assert!(max_abs_diff(&partial_trace(&prod, 1, 2).unwrap(), &b) < 1e-15);
    let three = kron(&prod, &a);
    assert!(max_abs_diff(&partial_trace(&three, 1, 3).unwrap(), &b) < 1e-15);
    let ghz = maximally_entangled();
    assert!(max_abs_diff(&partial_trace(&ghz, 0, 2).unwrap(), &(identity(3) / re(3.0))) < 1e-15);
    assert!(partial_trace(&ghz, 2, 2).is_err());
    assert!(partial_trace(&ghz, 0, 3).is_err());
}

#[test]
fn partial_transpose_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let rho = random_density(9, &mut rng);
    let pt = partial_transpose(&rho).unwrap();
    assert!(max_abs_diff(&partial_transpose(&pt).unwrap(), &rho) < 1e-15);
    assert!((pt.trace() - rho.trace()).norm() < 1e-15);
    let prod = kron(&random_density(3, &mut rng), &random_density(3, &mut rng));
    assert!(hermitian_eigenvalues(&partial_transpose(&prod).unwrap()).unwrap()[0] > -1e-14);
    let ev = hermitian_eigenvalues(&partial_transpose(&maximally_entangled()).unwrap()).unwrap();
    assert!((ev[0] + 1.0 / 3.0).abs() < 1e-14);
}

#[test]
fn eigenvalue_wrapper() {
    let d = crate::linalg::diag(&[re(3.0), re(-1.0), re(2.0)]);
    assert_eq!(hermitian_eigenvalues(&d).unwrap(), vec![-1.0, 2.0, 3.0]);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let a = random_density(6, &mut rng) - identity(6) * re(0.1);
    let ev = hermitian_eigenvalues(&a).unwrap();
    let frob: f64 = a.iter().map(|z| z.norm_sqr()).sum();
    assert!((ev.iter().map(|x| x * x).sum::<f64>() - frob).abs() < 1e-12);
    assert!((ev.iter().sum::<f64>() - a.trace().re).abs() < 1e-11);
    let mut bad = a.clone();
    bad[(0, 1)] += c(1.0, 0.0);
    assert!(matches!(hermitian_eigenvalues(&bad), Err(Error::Validation(_))));
}

#[test]
fn measures_on_reference_states() {
    let ghz = maximally_entangled();
    let rep = measure_report(&ghz, 0.0).unwrap();
    assert!((rep.m_vw - 1.0).abs() < 1e-13);
    assert!((rep.m_sm - 1.0).abs() < 1e-13);
    assert!((rep.eta - 1.0).abs() < 1e-13);
    assert!((rep.m_i - 1.0).abs() < 1e-13);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let prod = kron(&random_density(3, &mut rng), &random_density(3, &mut rng));
    assert!(negativity_mvw(&prod).unwrap() < 1e-14);
    assert!(m_sm(&tensor_from_density(&prod).unwrap()) < 1e-14);
    let psi = nalgebra::DVector::from_vec(vec![c(0.6, 0.0), c(0.0, 0.8), re(0.0)]);
    let pure = &psi * psi.adjoint();
    let pair = kron(&pure, &pure);
    let rep = measure_report(&pair, 0.0).unwrap();
    assert!(rep.eta.abs() < 1e-12 && rep.m_i.abs() < 1e-7);
}

#[test]
fn entropy_and_concurrence_values() {
    assert!((eta_n(&[1.0 / 3.0; 3]).unwrap() - 1.0).abs() < 1e-15);
    assert_eq!(eta_n(&[1.0, 0.0, 0.0]).unwrap(), 0.0);
    let v = eta_n(&[1.0 / 27.0, 1.0 / 27.0, 25.0 / 27.0]).unwrap();
    assert!((v - 0.2871).abs() < 1e-4, "{v}");
    assert!(eta_n(&[1.0 + 1e-11, -1e-11, 0.0]).is_ok());
    assert!(eta_n(&[1.1, -0.1, 0.0]).is_err());
    assert!(eta_n(&[0.5, 0.4, 0.0]).is_err());
    assert!((i_concurrence(&(identity(3) / re(3.0))) - 1.0).abs() < 1e-15);
    assert!((m_i_closed_form(std::f64::consts::PI / 3.0) - 17f64.sqrt() / 9.0).abs() < 1e-15);
    assert!((m_vw_closed_form(std::f64::consts::PI / 3.0) - 11.0 / 27.0).abs() < 1e-15);
}

#[test]
fn closed_forms_along_resonant_trajectory() {
    let j = 0.1;
    let settings = [(0.3, 0.0, 1.0), (0.3, 0.85, 1.0), (1.2, 0.5, 1.0), (0.3, 0.0, -1.0), (0.05, 0.99, 1.0)];
    for step in 0..=100 {
        let t = step as f64;
        let mut reports = Vec::new();
        for &(w1, k, sign) in &settings {
            let jj = sign * j;
            let r = ghz_correlations(t, jj, w1, 1.0, k);
            reports.push(measure_report(&density_from_tensor(&r), t).unwrap());
        }
        let jt = j * t;
        let first = reports[0];
        assert!((first.m_sm - m_sm_closed_form(MsmScenario::Ghz, t, j, 0.0)).abs() < 1e-10);
        assert!((first.m_vw - m_vw_closed_form(jt)).abs() < 1e-10);
        assert!((first.eta - eta2_closed_form(jt)).abs() < 1e-9);
        assert!((first.m_i - m_i_closed_form(jt)).abs() < 1e-10);
        for r in &reports[1..] {
            for (a, b) in [(r.m_sm, first.m_sm), (r.m_vw, first.m_vw), (r.eta, first.eta), (r.m_i, first.m_i)] {
                assert!((a - b).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn symmetric_state_closed_form() {
    let rho0 = symmetric_state_2().density();
    let m0 = m_sm(&tensor_from_density(&rho0).unwrap());
    assert!((m0 - (23.0f64 / 32.0).sqrt()).abs() < 1e-14);
    assert!((m_sm_closed_form(MsmScenario::Symmetric, 0.0, 0.1, 0.0) - (23.0f64 / 32.0).sqrt()).abs() < 1e-14);
    let cfg = resonant(0.1, 0.3, 0.0);
    for step in 0..=50 {
        let t = step as f64 * 2.0;
        let rho = exact_solution_circular(&rho0, t, &cfg).unwrap();
        let m = m_sm(&tensor_from_density(&rho).unwrap());
        assert!((m - m_sm_closed_form(MsmScenario::Symmetric, t, 0.1, 0.0)).abs() < 1e-10, "t={t}");
    }
}

#[test]
fn anisotropic_closed_form() {
    for j in [0.05, 0.1, 0.5] {
        for t in [0.0, 1.7, 33.0] {
            let a = m_sm_closed_form(MsmScenario::Anisotropic, t, j, 0.0);
            let b = m_sm_closed_form(MsmScenario::Ghz, t, j, 0.0);
            assert!((a - b).abs() < 1e-12);
        }
    }
    for (j, q) in [(-0.1, 0.02507), (0.1, 0.02507), (0.3, -0.2)] {
        let h = crate::biqutrit::PairCoeffs::from_fields([0.0; 3], q, q, [0.0; 3], q, q, j).matrix();
        let e = eigh(&h).unwrap();
        let rho0 = maximally_entangled();
        for t in [0.0, 2.5, 17.0, 80.0] {
            let rho = crate::linalg::conjugate(&e.propagator(t), &rho0);
            let m = m_sm(&tensor_from_density(&rho).unwrap());
            let closed = m_sm_closed_form(MsmScenario::Anisotropic, t, j, q);
            assert!((m - closed).abs() < 1e-10, "J={j} Q={q} t={t}: {m} vs {closed}");
        }
    }
    assert_eq!("sym".parse::<MsmScenario>().unwrap(), MsmScenario::Symmetric);
    assert!("x".parse::<MsmScenario>().is_err());
}
