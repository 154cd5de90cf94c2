//! Jacobi elliptic functions `sn, cn, dn` and the complete elliptic integral
//! of the first kind.
//!
//! **Modulus convention.** Every function here takes the *modulus* `k`, not
//! the parameter `m = k²`. `sn(u | k)` at `k = 0.85` is `sn(u | m = 0.7225)` in
//! libraries that use the parameter convention.

use std::f64::consts::FRAC_PI_2;

use crate::error::{domain, Result};

/// Values of the three Jacobi functions at argument `u`, modulus `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticTriple {
    pub u: f64,
    pub k: f64,
    pub sn: f64,
    pub cn: f64,
    pub dn: f64,
}

/// Complete elliptic integral of the first kind `K(k)` via the
/// arithmetic-geometric mean: `K = π / (2 AGM(1, sqrt(1 - k²)))`.
pub fn complete_k(k: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&k) {
        return Err(domain(format!("K(k) requires 0 <= k < 1, got {k}")));
    }
    let mut a = 1.0;
    let mut b = (1.0 - k * k).sqrt();
    for _ in 0..64 {
        if (a - b).abs() <= 1e-16 * a {
            break;
        }
        let next = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next;
    }
    Ok(FRAC_PI_2 / a)
}

// Relative gap at which the AGM sequence is considered converged. The
// descending Landen recurrence squares the residual, so 1e-9 is ample.
const AGM_GAP: f64 = 1e-9;
const MAX_LANDEN: usize = 16;

/// `sn, cn, dn` at argument `u` and modulus `k ∈ [0, 1]`.
///
/// Uses the AGM sequence of `(1, sqrt(1-k²))` followed by the descending
/// Landen recurrence. `k = 0` and `k = 1` are evaluated in closed form. A
/// modulus outside `[0, 1]` yields NaN components.
pub fn jacobi(u: f64, k: f64) -> EllipticTriple {
    let (sn, cn, dn) = if !(0.0..=1.0).contains(&k) {
        (f64::NAN, f64::NAN, f64::NAN)
    } else if k == 0.0 {
        (u.sin(), u.cos(), 1.0)
    } else if k == 1.0 {
        let sech = 1.0 / u.cosh();
        (u.tanh(), sech, sech)
    } else {
        landen(u, k)
    };
    EllipticTriple { u, k, sn, cn, dn }
}

fn landen(u: f64, k: f64) -> (f64, f64, f64) {
    let mut means = [0.0; MAX_LANDEN];
    let mut geo = [0.0; MAX_LANDEN];
    let mut a = 1.0;
    let mut b2 = 1.0 - k * k;
    let mut last = 0;
    let mut mean = 1.0;
    for i in 0..MAX_LANDEN {
        last = i;
        means[i] = a;
        let b = b2.sqrt();
        geo[i] = b;
        mean = 0.5 * (a + b);
        if (a - b).abs() <= AGM_GAP * a {
            break;
        }
        b2 = a * b;
        a = mean;
    }

    let v = u * mean;
    let mut sn = v.sin();
    let mut cn = v.cos();
    let mut dn = 1.0;
    if sn != 0.0 {
        let mut ratio = cn / sn;
        let mut acc = mean * ratio;
        for i in (0..=last).rev() {
            let m = means[i];
            ratio *= acc;
            acc *= dn;
            dn = (geo[i] + ratio) / (m + ratio);
            ratio = acc / m;
        }
        let s = 1.0 / (acc * acc + 1.0).sqrt();
        sn = if sn >= 0.0 { s } else { -s };
        cn = acc * sn;
    }
    (sn, cn, dn)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn k_at_zero_and_domain() {
        assert_eq!(complete_k(0.0).unwrap(), FRAC_PI_2);
        assert!(complete_k(1.0).is_err());
        assert!(complete_k(-0.1).is_err());
        assert!(complete_k(0.99).unwrap() > complete_k(0.85).unwrap());
    }

    #[test]
    fn k_matches_trapezoid_oracle() {
        // The integrand is smooth and even-periodic, so the trapezoid rule
        // converges geometrically on [0, π/2].
        for &k in &[0.2, 0.5, 0.85, 0.95] {
            let n = 4000;
            let h = FRAC_PI_2 / n as f64;
            let f = |t: f64| 1.0 / (1.0 - k * k * t.sin().powi(2)).sqrt();
            let mut s = 0.5 * (f(0.0) + f(FRAC_PI_2));
            for i in 1..n {
                s += f(i as f64 * h);
            }
            let oracle = s * h;
            let got = complete_k(k).unwrap();
            assert!(((got - oracle) / oracle).abs() < 1e-12, "k={k}");
        }
        // K(0.85) = 2.1099...
        assert!((complete_k(0.85).unwrap() - 2.1100).abs() < 1e-4);
    }

    #[test]
    fn limits_are_exact() {
        for &u in &[-3.0, -0.4, 0.0, 0.7, 2.5, 11.0] {
            let t = jacobi(u, 0.0);
            assert_eq!((t.sn, t.cn, t.dn), (u.sin(), u.cos(), 1.0));
            let t = jacobi(u, 1.0);
            assert_eq!((t.sn, t.cn, t.dn), (u.tanh(), 1.0 / u.cosh(), 1.0 / u.cosh()));
        }
    }

    #[test]
    fn quarter_period() {
        for &k in &[0.1, 0.5, 0.85, 0.99] {
            let kk = complete_k(k).unwrap();
            let t = jacobi(kk, k);
            assert!((t.sn - 1.0).abs() < 1e-12);
            assert!(t.cn.abs() < 1e-12);
            assert!((t.dn - (1.0 - k * k).sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn periods() {
        for &k in &[0.3, 0.85, 0.97] {
            let kk = complete_k(k).unwrap();
            for i in 0..50 {
                let u = -5.0 + 0.23 * i as f64;
                let a = jacobi(u, k);
                let half = jacobi(u + 2.0 * kk, k);
                let full = jacobi(u + 4.0 * kk, k);
                assert!((half.dn - a.dn).abs() < 1e-12);
                assert!((half.sn + a.sn).abs() < 1e-12);
                assert!((full.sn - a.sn).abs() < 1e-12);
                assert!((full.cn - a.cn).abs() < 1e-12);
            }
        }
    }

    proptest! {
        #[test]
        fn pythagorean_identities(u in -200.0f64..200.0, k in 0.0f64..1.0) {
            let t = jacobi(u, k);
            prop_assert!((t.sn * t.sn + t.cn * t.cn - 1.0).abs() < 1e-12);
            prop_assert!((t.dn * t.dn + k * k * t.sn * t.sn - 1.0).abs() < 1e-12);
        }
    }
}
