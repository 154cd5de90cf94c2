//! `N` qutrits with isotropic exchange between every pair and a common
//! constant field.
//!
//! Basis states are `|i₀ i₁ … i_{N−1}⟩ ↦ Σ i_s 3^{N−1−s}`: site 0 is the
//! slowest index, matching `A₀ ⊗ A₁ ⊗ …`. Each factor uses the level order
//! `(|1⟩, |0⟩, |−1⟩)`.

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::linalg::{c, eigh, re, CMat, Eigh, C64};

pub const MIN_SITES: usize = 2;
pub const MAX_SITES: usize = 6;

fn check_sites(n: usize) -> Result<()> {
    if (MIN_SITES..=MAX_SITES).contains(&n) {
        Ok(())
    } else {
        Err(Error::Domain(format!("chain length {n} not in {MIN_SITES}..={MAX_SITES}")))
    }
}

/// Pure state of `n` qutrits.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainState {
    pub n: usize,
    pub amplitudes: DVector<C64>,
}

impl ChainState {
    pub fn new(n: usize, amplitudes: DVector<C64>) -> Result<Self> {
        check_sites(n)?;
        let dim = 3usize.pow(n as u32);
        if amplitudes.len() != dim {
            return Err(Error::Dimension {
                expected: dim,
                got: amplitudes.len(),
            });
        }
        Ok(ChainState { n, amplitudes })
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    pub fn density(&self) -> CMat {
        &self.amplitudes * self.amplitudes.adjoint()
    }

    /// Reduced density matrix of one site.
    pub fn reduced(&self, site: usize) -> Result<CMat> {
        if site >= self.n {
            return Err(Error::Domain(format!("site {site} outside a chain of {}", self.n)));
        }
        let stride = 3usize.pow((self.n - 1 - site) as u32);
        let mut rho = CMat::zeros(3, 3);
        for (idx, a) in self.amplitudes.iter().enumerate() {
            let i = (idx / stride) % 3;
            for j in 0..3 {
                let partner = idx + j * stride - i * stride;
                rho[(i, j)] += a * self.amplitudes[partner].conj();
            }
        }
        Ok(rho)
    }
}

/// `(1/√3) Σ_i |i⟩^{⊗N}`.
pub fn ghz_state(n: usize) -> Result<ChainState> {
    check_sites(n)?;
    let dim = 3usize.pow(n as u32);
    let mut v = DVector::zeros(dim);
    // |i i … i⟩ sits at i · (3^N − 1)/2
    let step = (dim - 1) / 2;
    for i in 0..3 {
        v[i * step] = re(1.0 / 3f64.sqrt());
    }
    ChainState::new(n, v)
}

/// `(1/√6) Σ_{i≠j} |i⟩ ⊗ |j⟩`, the normalized symmetric two-qutrit state.
pub fn symmetric_state_2() -> ChainState {
    let mut v = DVector::zeros(9);
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                v[3 * i + j] = re(1.0 / 6f64.sqrt());
            }
        }
    }
    ChainState { n: 2, amplitudes: v }
}

/// Sparse Hermitian Hamiltonian in compressed-row form.
#[derive(Debug, Clone)]
pub struct ChainHamiltonian {
    pub n: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<C64>,
}

// S₊|m⟩ = √2 |m+1⟩ for m ∈ {0, −1}; level index l = 1 − m.
const SQRT2: f64 = std::f64::consts::SQRT_2;

/// `H_N = Σ_s ω⃗·S⃗⁽ˢ⁾ + J Σ_{s<s'} S⃗⁽ˢ⁾·S⃗⁽ˢ'⁾`.
pub fn hamiltonian_n(n: usize, j: f64, field: [f64; 3]) -> Result<ChainHamiltonian> {
    check_sites(n)?;
    if !(j.is_finite() && field.iter().all(|x| x.is_finite())) {
        return Err(Error::Domain("chain parameters must be finite".into()));
    }
    let dim = 3usize.pow(n as u32);
    let stride: Vec<usize> = (0..n).map(|s| 3usize.pow((n - 1 - s) as u32)).collect();
    let plus = c(0.5 * field[0], -0.5 * field[1]);
    let minus = c(0.5 * field[0], 0.5 * field[1]);

    let mut row_ptr = Vec::with_capacity(dim + 1);
    let mut cols = Vec::new();
    let mut vals = Vec::new();
    row_ptr.push(0);
    let mut row: Vec<(usize, C64)> = Vec::new();
    for col in 0..dim {
        // Build column `col` = H|col⟩; H is Hermitian, so the conjugate of the
        // column is the row. Entries are accumulated then merged.
        row.clear();
        let levels: Vec<usize> = (0..n).map(|s| (col / stride[s]) % 3).collect();
        let m = |l: usize| 1.0 - l as f64;
        let mut diag = 0.0;
        for s in 0..n {
            diag += field[2] * m(levels[s]);
            if levels[s] > 0 {
                row.push((col - stride[s], plus * SQRT2));
            }
            if levels[s] < 2 {
                row.push((col + stride[s], minus * SQRT2));
            }
            for t in s + 1..n {
                diag += j * m(levels[s]) * m(levels[t]);
                // ½J (S₊S₋ + S₋S₊) with S₊S₋ moving one level up on s, down on t
                if levels[s] > 0 && levels[t] < 2 {
                    row.push((col - stride[s] + stride[t], re(j)));
                }
                if levels[s] < 2 && levels[t] > 0 {
                    row.push((col + stride[s] - stride[t], re(j)));
                }
            }
        }
        if diag != 0.0 {
            row.push((col, re(diag)));
        }
        row.sort_by_key(|e| e.0);
        let mut merged: Vec<(usize, C64)> = Vec::with_capacity(row.len());
        for &(r, v) in row.iter() {
            match merged.last_mut() {
                Some(last) if last.0 == r => last.1 += v,
                _ => merged.push((r, v)),
            }
        }
        for (r, v) in merged {
            if v.norm() != 0.0 {
                cols.push(r);
                vals.push(v.conj());
            }
        }
        row_ptr.push(cols.len());
    }
    Ok(ChainHamiltonian { n, row_ptr, cols, vals })
}

impl ChainHamiltonian {
    pub fn dim(&self) -> usize {
        self.row_ptr.len() - 1
    }

    pub fn matvec(&self, x: &DVector<C64>) -> DVector<C64> {
        let mut y = DVector::zeros(self.dim());
        for r in 0..self.dim() {
            let mut acc = C64::new(0.0, 0.0);
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                acc += self.vals[k] * x[self.cols[k]];
            }
            y[r] = acc;
        }
        y
    }

    pub fn to_dense(&self) -> CMat {
        let mut m = CMat::zeros(self.dim(), self.dim());
        for r in 0..self.dim() {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                m[(r, self.cols[k])] = self.vals[k];
            }
        }
        m
    }

    /// Upper bound on the spectral radius from absolute row sums.
    fn norm_bound(&self) -> f64 {
        (0..self.dim())
            .map(|r| (self.row_ptr[r]..self.row_ptr[r + 1]).map(|k| self.vals[k].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

/// Largest Hilbert-space dimension handled by full diagonalization.
pub const DENSE_LIMIT: usize = 81;
const KRYLOV_DIM: usize = 30;
const KRYLOV_TOL: f64 = 1e-12;

/// Propagates states under a fixed Hamiltonian. Small chains are
/// diagonalized once; larger ones use a restarted Lanczos propagator.
#[derive(Debug, Clone)]
pub struct ChainEvolver {
    h: ChainHamiltonian,
    dense: Option<Eigh>,
}

impl ChainEvolver {
    pub fn new(h: ChainHamiltonian) -> Result<Self> {
        let dense = if h.dim() <= DENSE_LIMIT {
            Some(eigh(&h.to_dense())?)
        } else {
            None
        };
        Ok(ChainEvolver { h, dense })
    }

    pub fn evolve(&self, state: &ChainState, t: f64) -> Result<ChainState> {
        if state.amplitudes.len() != self.h.dim() {
            return Err(Error::Domain(format!(
                "state of dimension {} does not match Hamiltonian of dimension {}",
                state.amplitudes.len(),
                self.h.dim()
            )));
        }
        if t == 0.0 {
            return Ok(state.clone());
        }
        let amplitudes = match &self.dense {
            Some(e) => {
                let coeffs = e.vectors.adjoint() * &state.amplitudes;
                let phased = DVector::from_iterator(
                    coeffs.len(),
                    coeffs.iter().zip(&e.values).map(|(a, &lam)| a * C64::from_polar(1.0, -lam * t)),
                );
                &e.vectors * phased
            }
            None => krylov_propagate(&self.h, &state.amplitudes, t)?,
        };
        Ok(ChainState { n: state.n, amplitudes })
    }
}

/// `exp(−iHt) state`.
pub fn evolve_chain(state: &ChainState, t: f64, h: &ChainHamiltonian) -> Result<ChainState> {
    ChainEvolver::new(h.clone())?.evolve(state, t)
}

// One Lanczos basis per sub-step. The step is halved until the a-posteriori
// estimate β_m |[exp(−iT_m τ) e₁]_m| drops below the tolerance.
fn krylov_propagate(h: &ChainHamiltonian, v0: &DVector<C64>, t: f64) -> Result<DVector<C64>> {
    let mut v = v0.clone();
    let mut done = 0.0;
    let dir = t.signum();
    let total = t.abs();
    let mut tau = (10.0 / h.norm_bound().max(1e-300)).min(total);
    while done < total {
        let norm = v.norm();
        if norm == 0.0 {
            return Ok(v);
        }
        let (basis, alpha, beta) = lanczos(h, &(&v / re(norm)));
        let m = alpha.len();
        let mut tmat = CMat::zeros(m, m);
        for i in 0..m {
            tmat[(i, i)] = re(alpha[i]);
            if i + 1 < m {
                tmat[(i, i + 1)] = re(beta[i]);
                tmat[(i + 1, i)] = re(beta[i]);
            }
        }
        let e = eigh(&tmat)?;
        let tail = if beta.len() >= m { beta[m - 1] } else { 0.0 };
        let mut step = tau.min(total - done);
        let coeffs = loop {
            let u = e.propagator(dir * step);
            let col: Vec<C64> = (0..m).map(|i| u[(i, 0)]).collect();
            let err = tail * col[m - 1].norm();
            if err <= KRYLOV_TOL || step < 1e-12 * total {
                break col;
            }
            step *= 0.5;
        };
        let mut next = DVector::zeros(v.len());
        for (b, cf) in basis.iter().zip(&coeffs) {
            next += b * (cf * norm);
        }
        v = next;
        done += step;
        tau = step * 2.0;
    }
    Ok(v)
}

// Lanczos with full reorthogonalization. Returns the basis, the diagonal and
// the off-diagonal (one longer than the diagonal minus one when the last
// residual norm is kept for the error estimate).
fn lanczos(h: &ChainHamiltonian, v0: &DVector<C64>) -> (Vec<DVector<C64>>, Vec<f64>, Vec<f64>) {
    let mut basis = vec![v0.clone()];
    let mut alpha = Vec::new();
    let mut beta = Vec::new();
    for k in 0..KRYLOV_DIM.min(h.dim()) {
        let mut w = h.matvec(&basis[k]);
        let a = basis[k].dotc(&w).re;
        alpha.push(a);
        for _ in 0..2 {
            for b in &basis {
                let proj = b.dotc(&w);
                w -= b * proj;
            }
        }
        let bnorm = w.norm();
        beta.push(bnorm);
        if bnorm < 1e-14 || k + 1 == KRYLOV_DIM.min(h.dim()) {
            break;
        }
        basis.push(w / re(bnorm));
    }
    (basis, alpha, beta)
}

/// Closed-form single-site reduced eigenvalues `(r₁ = r₂, r₃)` of the
/// evolved GHZ-type state in zero field, as functions of `Jt`.
pub fn reduced_eigenvalues_analytic(n: usize, jt: f64) -> Result<(f64, f64)> {
    let cs = |m: f64| (m * jt).cos();
    let pair = match n {
        2 => ((5.0 + 4.0 * cs(3.0)) / 27.0, (17.0 - 8.0 * cs(3.0)) / 27.0),
        3 => ((29.0 - 4.0 * cs(5.0)) / 75.0, (17.0 + 8.0 * cs(5.0)) / 75.0),
        4 => (
            (905.0 - 98.0 * cs(3.0) - 72.0 * cs(7.0)) / 2205.0,
            (395.0 + 196.0 * cs(3.0) + 144.0 * cs(7.0)) / 2205.0,
        ),
        5 => (
            (16919.0 - 1944.0 * cs(5.0) - 800.0 * cs(9.0)) / 42525.0,
            (8687.0 + 3888.0 * cs(5.0) + 1600.0 * cs(9.0)) / 42525.0,
        ),
        6 => (
            (21977.0 - 1694.0 * cs(3.0) - 1936.0 * cs(7.0) - 560.0 * cs(11.0)) / 53361.0,
            (9407.0 + 3388.0 * cs(3.0) + 3872.0 * cs(7.0) + 1120.0 * cs(11.0)) / 53361.0,
        ),
        _ => return Err(Error::Domain(format!("no reduced-eigenvalue table for N = {n}"))),
    };
    Ok(pair)
}
