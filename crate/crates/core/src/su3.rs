//! The spin-1 operator basis `C_0 .. C_8` and its structure constants.
//!
//! `C_1, C_2, C_3` are the spin-1 matrices `S_1, S_2, S_3`; the remaining
//! traceless generators are quadrupole combinations. They satisfy
//! `Tr C_a C_b = 2 δ_ab` for `1 <= a, b <= 8` and `C_0 = sqrt(2/3) E`.
//!
//! The structure constants are defined through
//!
//! ```text
//! [C_a, C_b] = 2i e_abc C_c
//! {C_a, C_b} = (4/3) E δ_ab + 2 g_abc C_c
//! ```
//!
//! Both tables are computed from the matrices themselves when the algebra is
//! first touched. A hand-written list of the non-zero values is kept next to
//! them and compared in [`verify_algebra`].

use std::f64::consts::FRAC_1_SQRT_2;
use std::sync::OnceLock;

use crate::error::{domain, Result};
use crate::linalg::{anticommutator, c, commutator, from_rows, identity, re, trace_product, CMat, C64};

/// Dense `8 x 8 x 8` table indexed from zero (`table[a-1][b-1][c-1]`).
pub type Table3 = [[[f64; 8]; 8]; 8];

/// A non-zero structure-constant entry with zero-based indices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Entry {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub value: f64,
}

/// Basis matrices together with their structure-constant tables.
#[derive(Debug)]
pub struct Algebra {
    basis: Vec<CMat>,
    e: Table3,
    g: Table3,
    e_nonzero: Vec<Entry>,
    g_nonzero: Vec<Entry>,
}

static ALGEBRA: OnceLock<Algebra> = OnceLock::new();

/// Shared, lazily built algebra. Immutable once constructed.
pub fn algebra() -> &'static Algebra {
    ALGEBRA.get_or_init(Algebra::build)
}

fn raw_basis() -> Vec<CMat> {
    let z = re(0.0);
    let s = FRAC_1_SQRT_2;
    let i = c(0.0, 1.0);
    let r3 = 1.0 / 3f64.sqrt();
    vec![
        identity(3) * re((2.0f64 / 3.0).sqrt()),
        from_rows(3, &[z, re(s), z, re(s), z, re(s), z, re(s), z]),
        from_rows(3, &[z, -i * s, z, i * s, z, -i * s, z, i * s, z]),
        from_rows(3, &[re(1.0), z, z, z, z, z, z, z, re(-1.0)]),
        from_rows(3, &[z, z, -i, z, z, z, i, z, z]),
        from_rows(3, &[z, -i * s, z, i * s, z, i * s, z, -i * s, z]),
        from_rows(3, &[re(r3), z, z, z, re(-2.0 * r3), z, z, z, re(r3)]),
        from_rows(3, &[z, re(s), z, re(s), z, re(-s), z, re(-s), z]),
        from_rows(3, &[z, z, re(1.0), z, z, z, re(1.0), z, z]),
    ]
}

impl Algebra {
    fn build() -> Self {
        let basis = raw_basis();
        let mut e = [[[0.0; 8]; 8]; 8];
        let mut g = [[[0.0; 8]; 8]; 8];
        for a in 0..8 {
            for b in 0..8 {
                let comm = commutator(&basis[a + 1], &basis[b + 1]);
                let anti = anticommutator(&basis[a + 1], &basis[b + 1]);
                for cc in 0..8 {
                    // e_abc = Tr([C_a, C_b] C_c) / 4i,  g_abc = Tr({C_a, C_b} C_c) / 4
                    let te = trace_product(&comm, &basis[cc + 1]) / c(0.0, 4.0);
                    let tg = trace_product(&anti, &basis[cc + 1]) / 4.0;
                    e[a][b][cc] = snap(te.re);
                    g[a][b][cc] = snap(tg.re);
                }
            }
        }
        let e_nonzero = nonzero(&e);
        let g_nonzero = nonzero(&g);
        Algebra {
            basis,
            e,
            g,
            e_nonzero,
            g_nonzero,
        }
    }

    /// `C_index` for `index` in `0..=8`.
    pub fn basis(&self, index: usize) -> &CMat {
        &self.basis[index]
    }

    pub fn basis_all(&self) -> &[CMat] {
        &self.basis
    }

    pub fn e_table(&self) -> &Table3 {
        &self.e
    }

    pub fn g_table(&self) -> &Table3 {
        &self.g
    }

    /// All non-zero `e_abc` (every index permutation, zero-based).
    pub fn e_nonzero(&self) -> &[Entry] {
        &self.e_nonzero
    }

    /// All non-zero `g_abc` (every index permutation, zero-based).
    pub fn g_nonzero(&self) -> &[Entry] {
        &self.g_nonzero
    }
}

// Trace evaluation leaves ~1e-17 noise on entries that are exactly zero.
fn snap(x: f64) -> f64 {
    if x.abs() < 1e-14 {
        0.0
    } else {
        x
    }
}

fn nonzero(t: &Table3) -> Vec<Entry> {
    let mut out = Vec::new();
    for a in 0..8 {
        for b in 0..8 {
            for cc in 0..8 {
                if t[a][b][cc] != 0.0 {
                    out.push(Entry {
                        a,
                        b,
                        c: cc,
                        value: t[a][b][cc],
                    });
                }
            }
        }
    }
    out
}

fn check_index(index: usize, lo: usize) -> Result<()> {
    if (lo..=8).contains(&index) {
        Ok(())
    } else {
        Err(domain(format!("basis index {index} outside {lo}..=8")))
    }
}

/// The basis matrix `C_index`, `index` in `0..=8`.
pub fn basis_matrix(index: usize) -> Result<CMat> {
    check_index(index, 0)?;
    Ok(algebra().basis(index).clone())
}

/// Spin-1 matrices `(S_1, S_2, S_3)`.
pub fn spin_matrices() -> [CMat; 3] {
    let alg = algebra();
    [alg.basis(1).clone(), alg.basis(2).clone(), alg.basis(3).clone()]
}

/// Antisymmetric structure constant `e_abc`, indices in `1..=8`.
pub fn structure_e(a: usize, b: usize, cc: usize) -> Result<f64> {
    for i in [a, b, cc] {
        check_index(i, 1)?;
    }
    Ok(algebra().e[a - 1][b - 1][cc - 1])
}

/// Symmetric structure constant `g_abc`, indices in `1..=8`.
pub fn structure_g(a: usize, b: usize, cc: usize) -> Result<f64> {
    for i in [a, b, cc] {
        check_index(i, 1)?;
    }
    Ok(algebra().g[a - 1][b - 1][cc - 1])
}

/// Hand-transcribed non-zero `e_abc` with `a < b < c` (one-based).
pub fn listed_e() -> Vec<((usize, usize, usize), f64)> {
    let h = 0.5;
    let r = 3f64.sqrt() / 2.0;
    vec![
        ((1, 2, 3), h),
        ((1, 4, 7), h),
        ((1, 5, 8), h),
        ((2, 4, 5), -h),
        ((2, 7, 8), h),
        ((3, 5, 7), -h),
        ((1, 5, 6), r),
        ((2, 6, 7), r),
        ((3, 4, 8), -1.0),
    ]
}

/// Hand-transcribed non-zero `g_abc` with `a <= b <= c` (one-based).
pub fn listed_g() -> Vec<((usize, usize, usize), f64)> {
    let s = 1.0 / 3f64.sqrt();
    let t = -1.0 / (2.0 * 3f64.sqrt());
    let h = 0.5;
    vec![
        ((3, 3, 6), s),
        ((4, 4, 6), s),
        ((6, 6, 6), -s),
        ((6, 8, 8), s),
        ((1, 1, 6), t),
        ((2, 2, 6), t),
        ((5, 5, 6), t),
        ((6, 7, 7), t),
        ((1, 1, 8), h),
        ((1, 2, 4), h),
        ((1, 3, 7), h),
        ((2, 2, 8), -h),
        ((2, 3, 5), h),
        ((4, 5, 7), -h),
        ((5, 5, 8), h),
        ((7, 7, 8), -h),
    ]
}

/// Expands a list of representative entries into a dense table using
/// (anti)symmetry under every index swap.
pub fn expand_listed(list: &[((usize, usize, usize), f64)], antisymmetric: bool) -> Table3 {
    let mut t = [[[0.0; 8]; 8]; 8];
    for &((a, b, cc), v) in list {
        let idx = [a - 1, b - 1, cc - 1];
        for (perm, odd) in [
            ([0, 1, 2], false),
            ([1, 2, 0], false),
            ([2, 0, 1], false),
            ([1, 0, 2], true),
            ([0, 2, 1], true),
            ([2, 1, 0], true),
        ] {
            let sign = if antisymmetric && odd { -1.0 } else { 1.0 };
            t[idx[perm[0]]][idx[perm[1]]][idx[perm[2]]] = sign * v;
        }
    }
    t
}

/// Maximum residual of each algebra identity.
#[derive(Debug, Clone, Default)]
pub struct AlgebraReport {
    pub hermiticity: f64,
    pub tracelessness: f64,
    pub orthogonality: f64,
    pub product_identity: f64,
    pub e_table_vs_list: f64,
    pub g_table_vs_list: f64,
    pub e_antisymmetry: f64,
    pub g_symmetry: f64,
}

impl AlgebraReport {
    pub fn max_residual(&self) -> f64 {
        [
            self.hermiticity,
            self.tracelessness,
            self.orthogonality,
            self.product_identity,
            self.e_table_vs_list,
            self.g_table_vs_list,
            self.e_antisymmetry,
            self.g_symmetry,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    pub fn entries(&self) -> Vec<(&'static str, f64)> {
        vec![
            ("hermiticity", self.hermiticity),
            ("tracelessness", self.tracelessness),
            ("orthogonality", self.orthogonality),
            ("product_identity", self.product_identity),
            ("e_table_vs_list", self.e_table_vs_list),
            ("g_table_vs_list", self.g_table_vs_list),
            ("e_antisymmetry", self.e_antisymmetry),
            ("g_symmetry", self.g_symmetry),
        ]
    }
}

/// Sweeps every algebra identity and reports the worst residual of each.
pub fn verify_algebra() -> AlgebraReport {
    let alg = algebra();
    let mut rep = AlgebraReport::default();
    let eye = identity(3);

    for m in &alg.basis {
        rep.hermiticity = rep.hermiticity.max(crate::linalg::hermiticity_residual(m));
    }
    rep.tracelessness = (1..=8).map(|a| alg.basis[a].trace().norm()).fold(0.0, f64::max);
    rep.tracelessness = rep
        .tracelessness
        .max((alg.basis[0].trace() - re(6f64.sqrt())).norm());

    for a in 1..=8 {
        for b in 1..=8 {
            let want = if a == b { 2.0 } else { 0.0 };
            let tr = trace_product(&alg.basis[a], &alg.basis[b]);
            rep.orthogonality = rep.orthogonality.max((tr - re(want)).norm());

            // C_a C_b = (2/3) E δ_ab + (g_abc + i e_abc) C_c
            let prod = &alg.basis[a] * &alg.basis[b];
            let mut rhs = if a == b { &eye * re(2.0 / 3.0) } else { CMat::zeros(3, 3) };
            for cc in 1..=8 {
                let coeff = C64::new(alg.g[a - 1][b - 1][cc - 1], alg.e[a - 1][b - 1][cc - 1]);
                rhs += &alg.basis[cc] * coeff;
            }
            rep.product_identity = rep
                .product_identity
                .max(crate::linalg::max_abs_diff(&prod, &rhs));
        }
    }

    let le = expand_listed(&listed_e(), true);
    let lg = expand_listed(&listed_g(), false);
    for a in 0..8 {
        for b in 0..8 {
            for cc in 0..8 {
                rep.e_table_vs_list = rep.e_table_vs_list.max((alg.e[a][b][cc] - le[a][b][cc]).abs());
                rep.g_table_vs_list = rep.g_table_vs_list.max((alg.g[a][b][cc] - lg[a][b][cc]).abs());
                for (x, y, z) in [(b, a, cc), (a, cc, b), (cc, b, a)] {
                    rep.e_antisymmetry = rep.e_antisymmetry.max((alg.e[a][b][cc] + alg.e[x][y][z]).abs());
                    rep.g_symmetry = rep.g_symmetry.max((alg.g[a][b][cc] - alg.g[x][y][z]).abs());
                }
            }
        }
    }
    rep
}

/// Standard Gell-Mann matrix `λ_index`, `index` in `1..=8`.
pub fn gell_mann(index: usize) -> Result<CMat> {
    check_index(index, 1)?;
    let z = re(0.0);
    let o = re(1.0);
    let i = c(0.0, 1.0);
    let r3 = 1.0 / 3f64.sqrt();
    Ok(match index {
        1 => from_rows(3, &[z, o, z, o, z, z, z, z, z]),
        2 => from_rows(3, &[z, -i, z, i, z, z, z, z, z]),
        3 => from_rows(3, &[o, z, z, z, -o, z, z, z, z]),
        4 => from_rows(3, &[z, z, o, z, z, z, o, z, z]),
        5 => from_rows(3, &[z, z, -i, z, z, z, i, z, z]),
        6 => from_rows(3, &[z, z, z, z, z, o, z, o, z]),
        7 => from_rows(3, &[z, z, z, z, z, -i, z, i, z]),
        _ => from_rows(3, &[re(r3), z, z, z, re(r3), z, z, z, re(-2.0 * r3)]),
    })
}

/// Coefficients `x_j` with `C_index = Σ_j x_j λ_j` (entry `j-1` holds `x_j`).
pub fn gellmann_decompose(index: usize) -> Result<[f64; 8]> {
    check_index(index, 1)?;
    let s = FRAC_1_SQRT_2;
    let r = 3f64.sqrt() / 2.0;
    let mut x = [0.0; 8];
    match index {
        1 => {
            x[0] = s;
            x[5] = s;
        }
        2 => {
            x[1] = s;
            x[6] = s;
        }
        3 => {
            x[2] = 0.5;
            x[7] = r;
        }
        4 => x[4] = 1.0,
        5 => {
            x[1] = s;
            x[6] = -s;
        }
        6 => {
            x[2] = r;
            x[7] = -0.5;
        }
        7 => {
            x[0] = s;
            x[5] = -s;
        }
        _ => x[3] = 1.0,
    }
    Ok(x)
}
