//! Bar complexes with sparse integer boundary matrices.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::fgab::IntMatrix;
use crate::grp::FiniteGroup;
use crate::{Error, Result};

/// Sparse integer matrix stored by columns; entries sorted by row, no zeros,
/// no duplicate positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: Vec<Vec<(u32, i64)>>,
}

impl SparseIntMatrix {
    pub fn from_columns(rows: usize, cols: Vec<Vec<(u32, i64)>>) -> Result<SparseIntMatrix> {
        for (j, c) in cols.iter().enumerate() {
            for w in c.windows(2) {
                if w[0].0 >= w[1].0 {
                    return Err(Error::Shape(format!("column {j} is unsorted or has a duplicate row")));
                }
            }
            if c.iter().any(|&(r, v)| v == 0 || r as usize >= rows) {
                return Err(Error::Shape(format!("column {j} has a zero or an out-of-range entry")));
            }
        }
        Ok(SparseIntMatrix { rows, cols })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &[(u32, i64)] {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[Vec<(u32, i64)>] {
        &self.cols
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    /// `(row, col, value)` in column-major order.
    pub fn triplets(&self) -> Vec<(usize, usize, BigInt)> {
        let mut t = Vec::with_capacity(self.nnz());
        for (j, c) in self.cols.iter().enumerate() {
            for &(r, v) in c {
                t.push((r as usize, j, BigInt::from(v)));
            }
        }
        t
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols.len());
        for (j, c) in self.cols.iter().enumerate() {
            for &(r, v) in c {
                m.set(r as usize, j, BigInt::from(v));
            }
        }
        m
    }

    /// `self · other`, exact (used for `d ∘ d = 0`).
    pub fn mul_is_zero(&self, other: &SparseIntMatrix) -> bool {
        assert_eq!(self.cols.len(), other.rows);
        other.cols.par_iter().all(|c| {
            let mut acc: std::collections::HashMap<u32, i128> = std::collections::HashMap::new();
            for &(k, v) in c {
                for &(r, w) in &self.cols[k as usize] {
                    *acc.entry(r).or_insert(0) += v as i128 * w as i128;
                }
            }
            acc.values().all(|&x| x == 0)
        })
    }
}

/// Resource limits for bar-complex computations.
#[derive(Clone, Debug)]
pub struct BarConfig {
    /// Largest number of basis tuples in any degree that is built.
    pub max_tuples: usize,
    /// Coefficient growth cap for integral elimination, in bits.
    pub max_entry_bits: u32,
}

impl Default for BarConfig {
    fn default() -> Self {
        BarConfig { max_tuples: 300_000, max_entry_bits: 62 }
    }
}

/// Bar complex of `G` with trivial integer coefficients, degrees `0..=max_degree`.
///
/// Normalized: degree `n` has a basis of `n`-tuples of non-identity
/// elements, and faces containing the identity are dropped. Unnormalized:
/// all tuples. Tuples are numbered in base `b` (b = |G| − 1 or |G|), first
/// entry most significant.
#[derive(Clone, Debug)]
pub struct BarComplex {
    group: FiniteGroup,
    normalized: bool,
    letters: Vec<usize>,
    digit: Vec<u32>,
    boundaries: Vec<SparseIntMatrix>,
}

impl BarComplex {
    pub fn new(g: &FiniteGroup, max_degree: usize, cfg: &BarConfig) -> Result<BarComplex> {
        Self::build(g, max_degree, cfg, true)
    }

    pub fn unnormalized(g: &FiniteGroup, max_degree: usize, cfg: &BarConfig) -> Result<BarComplex> {
        Self::build(g, max_degree, cfg, false)
    }

    fn build(g: &FiniteGroup, max_degree: usize, cfg: &BarConfig, normalized: bool) -> Result<BarComplex> {
        let letters: Vec<usize> = g.elements().filter(|&x| !normalized || x != g.identity()).collect();
        let mut digit = vec![u32::MAX; g.order()];
        for (i, &x) in letters.iter().enumerate() {
            digit[x] = i as u32;
        }
        let b = letters.len();
        let size = (b as u128).checked_pow(max_degree as u32).unwrap_or(u128::MAX);
        if size > cfg.max_tuples as u128 {
            return Err(Error::Budget(format!(
                "bar complex of a group of order {} needs {size} tuples in degree {max_degree} (limit {})",
                g.order(),
                cfg.max_tuples
            )));
        }
        let mut bar = BarComplex { group: g.clone(), normalized, letters, digit, boundaries: Vec::new() };
        for n in 1..=max_degree {
            let rows = bar.dim(n - 1);
            let cols: Vec<Vec<(u32, i64)>> = (0..bar.dim(n)).into_par_iter().map(|j| bar.boundary_of(n, j)).collect();
            bar.boundaries.push(SparseIntMatrix { rows, cols });
        }
        Ok(bar)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn max_degree(&self) -> usize {
        self.boundaries.len()
    }

    /// Rank of the free module in degree `n`.
    pub fn dim(&self, n: usize) -> usize {
        self.letters.len().pow(n as u32)
    }

    /// `d_n: C_n → C_{n-1}` for `1 ≤ n ≤ max_degree`.
    pub fn d(&self, n: usize) -> &SparseIntMatrix {
        &self.boundaries[n - 1]
    }

    pub fn tuple(&self, n: usize, mut idx: usize) -> Vec<usize> {
        let b = self.letters.len();
        let mut t = vec![0; n];
        for i in (0..n).rev() {
            t[i] = self.letters[idx % b];
            idx /= b;
        }
        t
    }

    /// Index of a tuple, or `None` when it is degenerate.
    pub fn index(&self, t: &[usize]) -> Option<usize> {
        let b = self.letters.len();
        let mut idx = 0usize;
        for &x in t {
            let d = self.digit[x];
            if d == u32::MAX {
                return None;
            }
            idx = idx * b + d as usize;
        }
        Some(idx)
    }

    // d(g1..gn) = (g2..gn) + Σ (-1)^i (.., g_i g_{i+1}, ..) + (-1)^n (g1..g_{n-1})
    fn boundary_of(&self, n: usize, j: usize) -> Vec<(u32, i64)> {
        let g = &self.group;
        let t = self.tuple(n, j);
        let mut terms: Vec<(u32, i64)> = Vec::with_capacity(n + 1);
        let mut push = |face: &[usize], s: i64| {
            if let Some(i) = self.index(face) {
                terms.push((i as u32, s));
            }
        };
        push(&t[1..], 1);
        let mut face = Vec::with_capacity(n - 1);
        for i in 0..n - 1 {
            face.clear();
            face.extend_from_slice(&t[..i]);
            face.push(g.mul(t[i], t[i + 1]));
            face.extend_from_slice(&t[i + 2..]);
            push(&face, if (i + 1) % 2 == 0 { 1 } else { -1 });
        }
        push(&t[..n - 1], if n % 2 == 0 { 1 } else { -1 });
        terms.sort_unstable_by_key(|e| e.0);
        let mut out: Vec<(u32, i64)> = Vec::with_capacity(terms.len());
        for (r, v) in terms {
            match out.last_mut() {
                Some(l) if l.0 == r => l.1 += v,
                _ => out.push((r, v)),
            }
        }
        out.retain(|e| e.1 != 0);
        out
    }

    /// `d_{n-1} ∘ d_n = 0` checked exactly on every column, for all built degrees.
    pub fn check_dd(&self) -> bool {
        (2..=self.max_degree()).all(|n| self.d(n - 1).mul_is_zero(self.d(n)))
    }
}
