//! Dense complex matrix helpers and a cyclic Jacobi eigensolver for
//! Hermitian matrices.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Dense complex matrix used for operators and density matrices.
pub type CMat = DMatrix<C64>;

/// Density matrices share the operator representation; validity (unit trace,
/// hermiticity, positivity) is checked where it matters.
pub type DensityMatrix = CMat;

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

pub fn from_rows(n: usize, entries: &[C64]) -> CMat {
    CMat::from_row_slice(n, n, entries)
}

pub fn diag(values: &[C64]) -> CMat {
    let n = values.len();
    let mut m = CMat::zeros(n, n);
    for (i, v) in values.iter().enumerate() {
        m[(i, i)] = *v;
    }
    m
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

pub fn commutator(a: &CMat, b: &CMat) -> CMat {
    a * b - b * a
}

pub fn anticommutator(a: &CMat, b: &CMat) -> CMat {
    a * b + b * a
}

/// `Tr(a b)` without forming the product.
pub fn trace_product(a: &CMat, b: &CMat) -> C64 {
    let n = a.nrows();
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..n {
        for k in 0..n {
            acc += a[(i, k)] * b[(k, i)];
        }
    }
    acc
}

/// Largest entrywise modulus of `a - a†`.
pub fn hermiticity_residual(a: &CMat) -> f64 {
    let n = a.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            worst = worst.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Largest entrywise modulus of `a - b`.
pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn frobenius_sq(a: &CMat) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum()
}

/// Eigen-decomposition `M = V diag(values) V†` of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct Eigh {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Unitary matrix whose columns are the matching eigenvectors.
    pub vectors: CMat,
}

const JACOBI_TOL: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 60;
const HERMITIAN_TOL: f64 = 1e-10;

/// Diagonalizes a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// Each rotation first removes the phase of the pivot `a_pq` and then applies
/// the real plane rotation that annihilates it. Sweeps continue until the
/// off-diagonal Frobenius norm falls below `1e-14` relative to the full norm.
pub fn eigh(m: &CMat) -> Result<Eigh> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::Dimension {
            expected: n,
            got: m.ncols(),
        });
    }
    let scale = frobenius_sq(m).sqrt().max(1.0);
    let herm = hermiticity_residual(m);
    if herm > HERMITIAN_TOL * scale {
        return Err(Error::Validation(format!(
            "matrix is not Hermitian (residual {herm:e})"
        )));
    }

    // Work on the Hermitian part so that tiny input asymmetry cannot leak in.
    let mut a = (m + m.adjoint()) * re(0.5);
    let mut v = identity(n);
    let total = frobenius_sq(&a).sqrt();

    for _sweep in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|p| (0..n).filter(move |&q| q != p).map(move |q| (p, q)))
            .map(|(p, q)| a[(p, q)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= JACOBI_TOL * total || off < f64::MIN_POSITIVE {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = CMat::zeros(n, n);
    for (col, &src) in order.iter().enumerate() {
        vectors.set_column(col, &v.column(src));
    }
    Ok(Eigh { values, vectors })
}

fn rotate(a: &mut CMat, v: &mut CMat, p: usize, q: usize) {
    let b = a[(p, q)];
    let g = b.norm();
    if g == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let phase = b / g;

    let theta = (aqq - app) / (2.0 * g);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let cs = 1.0 / (t * t + 1.0).sqrt();
    let sn = t * cs;

    // U = diag(1, e^{-i phi}) * [[c, s], [-s, c]]
    let u_pp = re(cs);
    let u_pq = re(sn);
    let u_qp = -phase.conj() * sn;
    let u_qq = phase.conj() * cs;

    let n = a.nrows();
    for r in 0..n {
        let ap = a[(r, p)];
        let aq = a[(r, q)];
        a[(r, p)] = ap * u_pp + aq * u_qp;
        a[(r, q)] = ap * u_pq + aq * u_qq;
    }
    for r in 0..n {
        let pa = a[(p, r)];
        let qa = a[(q, r)];
        a[(p, r)] = u_pp.conj() * pa + u_qp.conj() * qa;
        a[(q, r)] = u_pq.conj() * pa + u_qq.conj() * qa;
    }
    for r in 0..n {
        let vp = v[(r, p)];
        let vq = v[(r, q)];
        v[(r, p)] = vp * u_pp + vq * u_qp;
        v[(r, q)] = vp * u_pq + vq * u_qq;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = re(a[(p, p)].re);
    a[(q, q)] = re(a[(q, q)].re);
}

impl Eigh {
    /// `V f(diag) V†` for a scalar function applied to the eigenvalues.
    pub fn apply(&self, f: impl Fn(f64) -> C64) -> CMat {
        let n = self.values.len();
        let mut scaled = self.vectors.clone();
        for (j, &lam) in self.values.iter().enumerate() {
            let w = f(lam);
            for i in 0..n {
                scaled[(i, j)] *= w;
            }
        }
        scaled * self.vectors.adjoint()
    }

    /// The propagator `exp(-i M t)`.
    pub fn propagator(&self, t: f64) -> CMat {
        self.apply(|lam| C64::from_polar(1.0, -lam * t))
    }
}

/// Ascending eigenvalues of a Hermitian matrix.
pub fn eigvalsh(m: &CMat) -> Result<Vec<f64>> {
    eigh(m).map(|e| e.values)
}

/// `exp(-i h t)` for Hermitian `h`.
pub fn expm_hermitian(h: &CMat, t: f64) -> Result<CMat> {
    Ok(eigh(h)?.propagator(t))
}

/// `u rho u†`.
pub fn conjugate(u: &CMat, rho: &CMat) -> CMat {
    u * rho * u.adjoint()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(n: usize, rng: &mut impl Rng) -> CMat {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = re(rng.gen_range(-1.0..1.0));
            for j in (i + 1)..n {
                let z = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
        m
    }

    #[test]
    fn diagonal_input_is_sorted() {
        let m = diag(&[re(3.0), re(-1.0), re(2.0)]);
        let vals = eigvalsh(&m).unwrap();
        assert_eq!(vals, vec![-1.0, 2.0, 3.0]);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = from_rows(2, &[re(0.0), re(1.0), re(0.0), re(0.0)]);
        assert!(matches!(eigh(&m), Err(Error::Validation(_))));
    }

    #[test]
    fn random_hermitian_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &n in &[2usize, 3, 9, 27] {
            let m = random_hermitian(n, &mut rng);
            let e = eigh(&m).unwrap();
            let back = e.apply(re);
            assert!(max_abs_diff(&back, &m) < 1e-10, "n={n}");
            let tr: f64 = e.values.iter().sum();
            assert!((tr - m.trace().re).abs() < 1e-11);
            let sq: f64 = e.values.iter().map(|x| x * x).sum();
            assert!((sq - frobenius_sq(&m)).abs() < 1e-10 * sq.max(1.0));
            let unit = e.vectors.adjoint() * &e.vectors;
            assert!(max_abs_diff(&unit, &identity(n)) < 1e-12);
        }
    }

    #[test]
    fn matches_nalgebra_reference() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let m = random_hermitian(9, &mut rng);
        let mut reference: Vec<f64> = m.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
        reference.sort_by(f64::total_cmp);
        let ours = eigvalsh(&m).unwrap();
        for (a, b) in ours.iter().zip(&reference) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn degenerate_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let h = random_hermitian(6, &mut rng);
        let u = expm_hermitian(&h, 0.7).unwrap();
        let d = diag(&[re(1.0), re(1.0), re(1.0), re(-2.0), re(-2.0), re(5.0)]);
        let m = conjugate(&u, &d);
        let vals = eigvalsh(&m).unwrap();
        let want = [-2.0, -2.0, 1.0, 1.0, 1.0, 5.0];
        for (a, b) in vals.iter().zip(&want) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}
