//! `sn` against numerical inversion of the incomplete integral
//! `F(φ, k) = ∫₀^φ dθ / sqrt(1 − k² sin²θ)`: `sn(F(φ, k), k) = sin φ`.

use qutrit_core::elliptic::{complete_k, jacobi};
use qutrit_core::quad::adaptive_simpson_scalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn incomplete_f(phi: f64, k: f64) -> f64 {
    adaptive_simpson_scalar(|th| 1.0 / (1.0 - k * k * th.sin().powi(2)).sqrt(), 0.0, phi, 1e-14)
}

#[test]
fn sn_inverts_incomplete_integral() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst = 0.0f64;
    for _ in 0..500 {
        let k: f64 = rng.gen_range(0.0..0.99);
        let phi: f64 = rng.gen_range(-1.5..1.5);
        let e = jacobi(incomplete_f(phi, k), k);
        worst = worst
            .max((e.sn - phi.sin()).abs())
            .max((e.cn - phi.cos()).abs())
            .max((e.dn - (1.0 - k * k * phi.sin().powi(2)).sqrt()).abs());
    }
    assert!(worst < 1e-12, "worst {worst:e}");
}

#[test]
fn quarter_period_matches_quadrature() {
    for k in [0.1, 0.5, 0.85, 0.95] {
        let kk = complete_k(k).unwrap();
        assert!((kk - incomplete_f(std::f64::consts::FRAC_PI_2, k)).abs() < 1e-12);
        let e = jacobi(kk, k);
        assert!((e.sn - 1.0).abs() < 1e-13 && e.cn.abs() < 1e-7);
        assert!((e.dn - (1.0 - k * k).sqrt()).abs() < 1e-12);
    }
}

#[test]
fn derivatives_match_finite_differences() {
    // d sn/du = cn dn, d cn/du = −sn dn, d dn/du = −k² sn cn
    let h = 1e-5;
    for k in [0.3, 0.85] {
        for i in 0..50 {
            let u = -5.0 + 0.2 * i as f64;
            let (p, m, c) = (jacobi(u + h, k), jacobi(u - h, k), jacobi(u, k));
            let d = |a: f64, b: f64| (a - b) / (2.0 * h);
            assert!((d(p.sn, m.sn) - c.cn * c.dn).abs() < 1e-9);
            assert!((d(p.cn, m.cn) + c.sn * c.dn).abs() < 1e-9);
            assert!((d(p.dn, m.dn) + k * k * c.sn * c.cn).abs() < 1e-9);
        }
    }
}
