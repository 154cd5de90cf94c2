//! Entanglement measures for qutrit pairs and chains.

use std::str::FromStr;

use crate::biqutrit::{tensor_from_density, BlochTensor};
use crate::error::{Error, Result};
use crate::linalg::{eigvalsh, CMat, DensityMatrix};

/// Reduced density matrix of site `keep` of an `n`-qutrit density matrix
/// (site 0 is the slowest index).
pub fn partial_trace(rho: &DensityMatrix, keep: usize, n: usize) -> Result<DensityMatrix> {
    let dim = 3usize.pow(n as u32);
    if rho.nrows() != dim || rho.ncols() != dim {
        return Err(Error::Dimension {
            expected: dim,
            got: rho.nrows(),
        });
    }
    if keep >= n {
        return Err(Error::Domain(format!("site {keep} outside {n} qutrits")));
    }
    let stride = 3usize.pow((n - 1 - keep) as u32);
    let mut out = CMat::zeros(3, 3);
    for idx in 0..dim {
        let i = (idx / stride) % 3;
        if i != 0 {
            continue;
        }
        for a in 0..3 {
            for b in 0..3 {
                out[(a, b)] += rho[(idx + a * stride, idx + b * stride)];
            }
        }
    }
    Ok(out)
}

/// `(T ⊗ E) ϱ` for a qutrit pair.
pub fn partial_transpose(rho: &DensityMatrix) -> Result<CMat> {
    if rho.nrows() != 9 || rho.ncols() != 9 {
        return Err(Error::Dimension {
            expected: 9,
            got: rho.nrows(),
        });
    }
    Ok(CMat::from_fn(9, 9, |r, c| {
        let (i1, i2) = (r / 3, r % 3);
        let (j1, j2) = (c / 3, c % 3);
        rho[(3 * j1 + i2, 3 * i1 + j2)]
    }))
}

/// Ascending eigenvalues of a Hermitian matrix (cyclic Jacobi).
pub fn hermitian_eigenvalues(m: &CMat) -> Result<Vec<f64>> {
    eigvalsh(m)
}

/// Negativity: absolute sum of the negative eigenvalues of `ϱ^pt`.
pub fn negativity_mvw(rho: &DensityMatrix) -> Result<f64> {
    let ev = hermitian_eigenvalues(&partial_transpose(rho)?)?;
    Ok(ev.iter().filter(|&&x| x < 0.0).map(|x| -x).sum())
}

/// `sqrt(⅛ Σ_ij (R_ij − R_i0 R_0j)²)` over `i, j = 1..8`.
pub fn m_sm(r: &BlochTensor) -> f64 {
    let r = &r.0;
    let mut sum = 0.0;
    for i in 1..9 {
        for j in 1..9 {
            let x = r[i][j] - r[i][0] * r[0][j];
            sum += x * x;
        }
    }
    (sum / 8.0).sqrt()
}

/// Base-3 von Neumann entropy of a reduced spectrum, `0 log 0 = 0`.
///
/// Eigenvalues in `[−1e-10, 0)` are treated as zero.
pub fn eta_n(eigs: &[f64; 3]) -> Result<f64> {
    if eigs.iter().any(|&x| x < -1e-10 || !x.is_finite()) {
        return Err(Error::Validation(format!("negative reduced eigenvalue in {eigs:?}")));
    }
    let total: f64 = eigs.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::Validation(format!("reduced eigenvalues sum to {total}")));
    }
    Ok(eigs
        .iter()
        .map(|&x| x.max(0.0))
        .filter(|&x| x > 0.0)
        .map(|x| -x * x.ln() / 3f64.ln())
        .sum::<f64>()
        .max(0.0))
}

/// Entropy measure of a reduced matrix.
pub fn reduced_entropy(rho1: &DensityMatrix) -> Result<f64> {
    let ev = hermitian_eigenvalues(rho1)?;
    eta_n(&[ev[0], ev[1], ev[2]])
}

/// `(√3/2) sqrt(2(1 − Tr ρ₁²))`.
pub fn i_concurrence(rho1: &DensityMatrix) -> f64 {
    let purity = (rho1 * rho1).trace().re;
    0.75f64.sqrt() * (2.0 * (1.0 - purity)).max(0.0).sqrt()
}

/// The four pair measures at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureReport {
    pub t: f64,
    pub m_vw: f64,
    pub m_sm: f64,
    /// Mean of the two reduced entropies.
    pub eta: f64,
    /// I-concurrence of the first qutrit.
    pub m_i: f64,
}

pub fn measure_report(rho: &DensityMatrix, t: f64) -> Result<MeasureReport> {
    let r = tensor_from_density(rho)?;
    let rho1 = partial_trace(rho, 0, 2)?;
    let rho2 = partial_trace(rho, 1, 2)?;
    Ok(MeasureReport {
        t,
        m_vw: negativity_mvw(rho)?,
        m_sm: m_sm(&r),
        eta: 0.5 * (reduced_entropy(&rho1)? + reduced_entropy(&rho2)?),
        m_i: i_concurrence(&rho1),
    })
}

/// Scenarios with a closed-form `m_SM(t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MsmScenario {
    /// Maximally entangled start, consistent drive at resonance.
    Ghz,
    /// Symmetric start `|s⟩`, consistent drive at resonance.
    Symmetric,
    /// Maximally entangled start, zero field, `Q = d = Q̄ = d̄`.
    Anisotropic,
}

impl FromStr for MsmScenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ghz" => Ok(MsmScenario::Ghz),
            "sym" | "symmetric" => Ok(MsmScenario::Symmetric),
            "aniso" | "anisotropic" => Ok(MsmScenario::Anisotropic),
            other => Err(Error::Domain(format!("unknown m_SM scenario '{other}'"))),
        }
    }
}

/// Closed-form `m_SM(t)`; `q` is only used by the anisotropic case.
pub fn m_sm_closed_form(which: MsmScenario, t: f64, j: f64, q: f64) -> f64 {
    let c = |m: f64| (m * j * t).cos();
    match which {
        MsmScenario::Ghz => {
            (4457.0 + 2776.0 * c(3.0) - 632.0 * c(6.0) - 56.0 * c(9.0) + 16.0 * c(12.0)).sqrt() / 6561f64.sqrt()
        }
        MsmScenario::Symmetric => {
            (102679.0 + 19136.0 * c(3.0) + 29312.0 * c(6.0) - 1024.0 * c(9.0) + 800.0 * c(12.0)).sqrt()
                / 209952f64.sqrt()
        }
        MsmScenario::Anisotropic => {
            let big = 9.0 * j * j + 8.0 * q * j + 16.0 * q * q;
            let w = big.sqrt();
            let qk = anisotropic_coefficients(j, q);
            let sum: f64 = qk.iter().enumerate().map(|(k, a)| a * (k as f64 * w * t).cos()).sum();
            sum.max(0.0).sqrt() / (big * big)
        }
    }
}

/// `q₀ … q₄` of the anisotropic closed form.
pub fn anisotropic_coefficients(j: f64, q: f64) -> [f64; 5] {
    let jp = |n: i32| j.powi(n);
    let qp = |n: i32| q.powi(n);
    let s = j + 2.0 * q;
    [
        4457.0 * jp(8) + 11616.0 * q * jp(7) + 47392.0 * qp(2) * jp(6) + 85888.0 * qp(3) * jp(5)
            + 163072.0 * qp(4) * jp(4)
            + 194560.0 * qp(5) * jp(3)
            + 221184.0 * qp(6) * jp(2)
            + 131072.0 * qp(7) * j
            + 65536.0 * qp(8),
        8.0 * jp(2) * s * s * (347.0 * jp(4) + 518.0 * q * jp(3) + 1440.0 * qp(2) * jp(2) + 1504.0 * qp(3) * j + 1024.0 * qp(4)),
        -8.0 * jp(2) * s * s * (79.0 * jp(4) + 76.0 * q * jp(3) + 320.0 * qp(2) * jp(2) + 448.0 * qp(3) * j + 256.0 * qp(4)),
        -8.0 * jp(3) * (7.0 * j - 4.0 * q) * s.powi(3) * (j + 4.0 * q),
        16.0 * jp(4) * s.powi(4),
    ]
}

/// Negative eigenvalues `(ε₁ = ε₂, ε₃)` of the partial transpose along the
/// resonant maximally entangled trajectory.
pub fn negativity_eigenvalues_closed_form(jt: f64) -> (f64, f64) {
    let c3 = (3.0 * jt).cos();
    let c6 = (6.0 * jt).cos();
    (-(69.0 + 28.0 * c3 - 16.0 * c6).sqrt() / 27.0, -(5.0 + 4.0 * c3) / 27.0)
}

/// `|ε₁ + ε₂ + ε₃|`.
pub fn m_vw_closed_form(jt: f64) -> f64 {
    let (e1, e3) = negativity_eigenvalues_closed_form(jt);
    (2.0 * e1 + e3).abs()
}

/// Reduced eigenvalues `(λ₁ = λ₂, λ₃)` along the same trajectory.
pub fn pair_reduced_eigenvalues(jt: f64) -> (f64, f64) {
    let c3 = (3.0 * jt).cos();
    ((5.0 + 4.0 * c3) / 27.0, (17.0 - 8.0 * c3) / 27.0)
}

/// `η₂` from the closed-form reduced spectrum.
pub fn eta2_closed_form(jt: f64) -> f64 {
    let (l, l3) = pair_reduced_eigenvalues(jt);
    eta_n(&[l, l, l3]).unwrap_or(f64::NAN)
}

/// `(1/9) sqrt(57 + 32 cos 3Jt − 8 cos 6Jt)`.
pub fn m_i_closed_form(jt: f64) -> f64 {
    (57.0 + 32.0 * (3.0 * jt).cos() - 8.0 * (6.0 * jt).cos()).sqrt() / 9.0
}

#[cfg(test)]
mod tests;
