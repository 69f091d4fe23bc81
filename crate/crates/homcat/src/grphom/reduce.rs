//! Unit-pivot reduction of a three-term free complex over Z.
//!
//! A pivot `±1` at `(r, c)` of a differential removes `c` from its source and
//! `r` from its target: the pivoted matrix takes a Schur complement and the
//! neighbouring differentials lose the matching row or column. The result
//! is chain homotopy equivalent to the input, so homology with any
//! coefficients and cohomology in the middle degree are unchanged.

use num_bigint::BigInt;

use super::bar::SparseIntMatrix;
use crate::fgab::{hermite_basis, IntMatrix};

struct Dyn {
    cols: Vec<Vec<(u32, i64)>>,
    col_live: Vec<bool>,
    row_live: Vec<bool>,
    // columns that may hold an entry in each row; stale ids allowed
    row_index: Vec<Vec<u32>>,
    nnz: usize,
}

#[derive(Debug)]
pub(crate) struct Overflow;

impl Dyn {
    fn new(m: &SparseIntMatrix) -> Dyn {
        let mut row_index = vec![Vec::new(); m.rows()];
        for (j, c) in m.columns().iter().enumerate() {
            for &(r, _) in c {
                row_index[r as usize].push(j as u32);
            }
        }
        Dyn {
            cols: m.columns().to_vec(),
            col_live: vec![true; m.cols()],
            row_live: vec![true; m.rows()],
            row_index,
            nnz: m.nnz(),
        }
    }

    fn entry(&self, r: u32, c: usize) -> i64 {
        match self.cols[c].binary_search_by_key(&r, |e| e.0) {
            Ok(i) => self.cols[c][i].1,
            Err(_) => 0,
        }
    }

    fn kill_row(&mut self, r: u32) {
        self.row_live[r as usize] = false;
        for c in std::mem::take(&mut self.row_index[r as usize]) {
            let col = &mut self.cols[c as usize];
            if let Ok(i) = col.binary_search_by_key(&r, |e| e.0) {
                col.remove(i);
                self.nnz -= 1;
            }
        }
    }

    fn kill_col(&mut self, c: usize) {
        self.col_live[c] = false;
        self.nnz -= self.cols[c].len();
        self.cols[c] = Vec::new();
    }

    fn pivot(&mut self, r: u32, c: usize, u: i64, cap: i64) -> Result<(), Overflow> {
        let pcol = std::mem::take(&mut self.cols[c]);
        let others: Vec<u32> = std::mem::take(&mut self.row_index[r as usize]);
        for c2 in others {
            let c2 = c2 as usize;
            if c2 == c || !self.col_live[c2] {
                continue;
            }
            let a = self.entry(r, c2);
            if a == 0 {
                continue;
            }
            let f = a.checked_mul(u).ok_or(Overflow)?;
            let old = std::mem::take(&mut self.cols[c2]);
            let mut merged = Vec::with_capacity(old.len() + pcol.len());
            let (mut i, mut j) = (0, 0);
            while i < old.len() || j < pcol.len() {
                let take_old = j == pcol.len() || (i < old.len() && old[i].0 < pcol[j].0);
                let take_new = i == old.len() || (j < pcol.len() && pcol[j].0 < old[i].0);
                if take_old {
                    merged.push(old[i]);
                    i += 1;
                } else if take_new {
                    let v = pcol[j].1.checked_mul(f).ok_or(Overflow)?.checked_neg().ok_or(Overflow)?;
                    if v.abs() > cap {
                        return Err(Overflow);
                    }
                    self.row_index[pcol[j].0 as usize].push(c2 as u32);
                    merged.push((pcol[j].0, v));
                    j += 1;
                } else {
                    let v = old[i].1.checked_sub(pcol[j].1.checked_mul(f).ok_or(Overflow)?).ok_or(Overflow)?;
                    if v.abs() > cap {
                        return Err(Overflow);
                    }
                    if v != 0 {
                        merged.push((old[i].0, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
            self.nnz = self.nnz + merged.len() - old.len();
            self.cols[c2] = merged;
        }
        self.cols[c] = pcol;
        self.kill_col(c);
        self.row_live[r as usize] = false;
        Ok(())
    }

    /// Finds pivots until none is left; reports each `(row, col)` to `on_pivot`.
    fn eliminate(&mut self, cap: i64, nnz_cap: usize, mut on_pivot: impl FnMut(u32, usize)) -> Result<(), Overflow> {
        loop {
            let mut order: Vec<usize> = (0..self.cols.len()).filter(|&c| self.col_live[c] && !self.cols[c].is_empty()).collect();
            order.sort_by_key(|&c| (self.cols[c].len(), c));
            let mut progress = false;
            for c in order {
                if !self.col_live[c] {
                    continue;
                }
                let best = self.cols[c]
                    .iter()
                    .filter(|e| e.1.abs() == 1 && self.row_live[e.0 as usize])
                    .min_by_key(|e| (self.row_index[e.0 as usize].len(), e.0))
                    .copied();
                if let Some((r, u)) = best {
                    self.pivot(r, c, u, cap)?;
                    on_pivot(r, c);
                    progress = true;
                    if self.nnz > nnz_cap {
                        return Err(Overflow);
                    }
                }
            }
            if !progress {
                return Ok(());
            }
        }
    }
}

/// Small dense complex `C_{n+1} → C_n → C_{n-1}` equivalent to the input in
/// degree `n`. Zero rows of `d_n` and zero columns of `d_{n+1}` are dropped
/// and the columns of `d_{n+1}` are replaced by a lattice basis of their span.
pub(crate) struct Reduced {
    pub dn: IntMatrix,
    pub dn1: IntMatrix,
}

pub(crate) fn reduce(dn: &SparseIntMatrix, dn1: &SparseIntMatrix, entry_bits: u32, nnz_cap: usize) -> Result<Reduced, Overflow> {
    assert_eq!(dn.cols(), dn1.rows());
    let cap = if entry_bits >= 63 { i64::MAX } else { (1i64 << entry_bits) - 1 };
    let mut a = Dyn::new(dn);
    let mut b = Dyn::new(dn1);
    let mut killed = Vec::new();
    a.eliminate(cap, nnz_cap, |_, c| killed.push(c as u32))?;
    for c in killed {
        b.kill_row(c);
    }
    let mut dead_mid = Vec::new();
    b.eliminate(cap, nnz_cap, |r, _| dead_mid.push(r as usize))?;
    for r in dead_mid {
        a.kill_col(r);
    }
    let mid: Vec<usize> = (0..dn.cols()).filter(|&i| a.col_live[i]).collect();
    let mut pos = vec![usize::MAX; dn.cols()];
    for (i, &m) in mid.iter().enumerate() {
        pos[m] = i;
    }
    let mut used_rows: Vec<u32> = mid.iter().flat_map(|&c| a.cols[c].iter().map(|e| e.0)).collect();
    used_rows.sort_unstable();
    used_rows.dedup();
    let mut dn_red = IntMatrix::zeros(used_rows.len(), mid.len());
    for (j, &c) in mid.iter().enumerate() {
        for &(r, v) in &a.cols[c] {
            let i = used_rows.binary_search(&r).unwrap();
            dn_red.set(i, j, BigInt::from(v));
        }
    }
    let cols: Vec<Vec<BigInt>> = (0..dn1.cols())
        .filter(|&c| b.col_live[c] && !b.cols[c].is_empty())
        .map(|c| {
            let mut v = vec![BigInt::from(0); mid.len()];
            for &(r, x) in &b.cols[c] {
                v[pos[r as usize]] = BigInt::from(x);
            }
            v
        })
        .collect();
    let gens = IntMatrix::from_columns(mid.len(), &cols);
    let basis: Vec<Vec<BigInt>> = if cols.is_empty() { Vec::new() } else { hermite_basis(&gens).into_iter().map(|(_, v)| v).collect() };
    let dn1_red = IntMatrix::from_columns(mid.len(), &basis);
    Ok(Reduced { dn: dn_red, dn1: dn1_red })
}
