//! Dense integer matrices with exact Smith and Hermite reductions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

use crate::Error;

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{}x{}[", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self, Error> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from row vectors; every row must have length `cols`.
    pub fn from_rows(rows: &[Vec<i64>], cols: usize) -> Result<Self, Error> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Shape(format!("row {i} has {} entries, expected {cols}", r.len())));
            }
            data.extend(r.iter().map(|&v| BigInt::from(v)));
        }
        Ok(IntMatrix { rows: rows.len(), cols, data })
    }

    /// Convenience for literals; panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let owned: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        Self::from_rows(&owned, cols).expect("ragged matrix literal")
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[BigInt]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, v) in c.iter().enumerate() {
                m.data[i * columns.len() + j] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let cols = self.cols + other.cols;
        let mut out = Self::zeros(self.rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[i * cols + j] = self.get(i, j).clone();
            }
            for j in 0..other.cols {
                out.data[i * cols + self.cols + j] = other.get(i, j).clone();
            }
        }
        out
    }

    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        IntMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn block_diag(blocks: &[&IntMatrix]) -> IntMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.data[(r0 + i) * cols + c0 + j] = b.get(i, j).clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &IntMatrix) -> IntMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.data[(i * other.rows + k) * cols + j * other.cols + l] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> IntMatrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend(self.row(i).iter().cloned());
        }
        IntMatrix { rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> IntMatrix {
        let mut out = Self::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (jj, &j) in idx.iter().enumerate() {
                out.data[i * idx.len() + jj] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Sparse view: `(row, col, value)` for nonzero entries, row-major order.
    pub fn triplets(&self) -> Vec<(usize, usize, BigInt)> {
        let mut out = Vec::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                if !v.is_zero() {
                    out.push((i, j, v.clone()));
                }
            }
        }
        out
    }

    pub fn from_triplets(rows: usize, cols: usize, trips: &[(usize, usize, BigInt)]) -> Result<Self, Error> {
        let mut m = Self::zeros(rows, cols);
        let mut seen = std::collections::HashSet::new();
        for (i, j, v) in trips {
            if *i >= rows || *j >= cols {
                return Err(Error::Shape(format!("triplet ({i},{j}) outside {rows}x{cols}")));
            }
            if v.is_zero() {
                return Err(Error::Shape(format!("explicit zero at ({i},{j})")));
            }
            if !seen.insert((*i, *j)) {
                return Err(Error::Shape(format!("duplicate coordinate ({i},{j})")));
            }
            m.set(*i, *j, v.clone());
        }
        Ok(m)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|v| v.to_i64()).collect()).collect()
    }
}

/// `U·A·V = S` with `U`, `V` unimodular and `S` diagonal with a divisor chain.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    /// Diagonal of `S` (length `min(rows, cols)`): positive divisors then zeros.
    pub divisors: Vec<BigInt>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.divisors.iter().filter(|d| !d.is_zero()).count()
    }
}

pub(crate) struct SmithFull {
    pub dec: SmithDecomposition,
    pub u_inv: Option<IntMatrix>,
}

/// Smith normal form with deterministic pivoting: the entry of least nonzero
/// absolute value in the active block, ties broken by lowest (row, column).
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    smith_impl(a, false).dec
}

fn row_axpy(data: &mut [BigInt], cols: usize, dst: usize, src: usize, q: &BigInt) {
    // data[dst] -= q * data[src]
    if dst == src || q.is_zero() {
        return;
    }
    let (d, s) = if dst < src {
        let (lo, hi) = data.split_at_mut(src * cols);
        (&mut lo[dst * cols..dst * cols + cols], &hi[..cols])
    } else {
        let (lo, hi) = data.split_at_mut(dst * cols);
        (&mut hi[..cols], &lo[src * cols..src * cols + cols])
    };
    for (x, y) in d.iter_mut().zip(s.iter()) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

fn col_axpy(data: &mut [BigInt], rows: usize, cols: usize, dst: usize, src: usize, q: &BigInt) {
    if dst == src || q.is_zero() {
        return;
    }
    for i in 0..rows {
        let y = data[i * cols + src].clone();
        if !y.is_zero() {
            data[i * cols + dst] -= q * y;
        }
    }
}

fn swap_rows(data: &mut [BigInt], cols: usize, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..cols {
        data.swap(a * cols + j, b * cols + j);
    }
}

fn swap_cols(data: &mut [BigInt], rows: usize, cols: usize, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..rows {
        data.swap(i * cols + a, i * cols + b);
    }
}

pub(crate) fn smith_impl(a: &IntMatrix, track_u_inv: bool) -> SmithFull {
    let (m, n) = (a.rows, a.cols);
    let mut w = a.data.clone();
    let mut u = IntMatrix::identity(m).data;
    let mut v = IntMatrix::identity(n).data;
    let mut ui = if track_u_inv { Some(IntMatrix::identity(m).data) } else { None };

    // row op "row dst -= q row src" on A and U; inverse is "col src += q col dst" on U^{-1}
    let row_op = |w: &mut Vec<BigInt>, u: &mut Vec<BigInt>, ui: &mut Option<Vec<BigInt>>, dst: usize, src: usize, q: &BigInt| {
        row_axpy(w, n, dst, src, q);
        row_axpy(u, m, dst, src, q);
        if let Some(ui) = ui {
            let mq = -q;
            col_axpy(ui, m, m, src, dst, &mq);
        }
    };

    let r = m.min(n);
    let mut t = 0;
    while t < r {
        loop {
            // pivot search
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = &w[i * n + j];
                    if x.is_zero() {
                        continue;
                    }
                    match best {
                        None => best = Some((i, j)),
                        Some((bi, bj)) => {
                            if x.magnitude() < w[bi * n + bj].magnitude() {
                                best = Some((i, j));
                            }
                        }
                    }
                }
            }
            let Some((pi, pj)) = best else {
                // remaining block is zero
                return finish(a, w, u, v, ui, m, n);
            };
            swap_rows(&mut w, n, t, pi);
            swap_rows(&mut u, m, t, pi);
            if let Some(ui) = ui.as_mut() {
                swap_cols(ui, m, m, t, pi);
            }
            swap_cols(&mut w, m, n, t, pj);
            swap_cols(&mut v, n, n, t, pj);

            let p = w[t * n + t].clone();
            let mut dirty = false;
            for i in t + 1..m {
                let x = &w[i * n + t];
                if x.is_zero() {
                    continue;
                }
                let q = x.div_floor(&p);
                row_op(&mut w, &mut u, &mut ui, i, t, &q);
                if !w[i * n + t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..n {
                let x = &w[t * n + j];
                if x.is_zero() {
                    continue;
                }
                let q = x.div_floor(&p);
                col_axpy(&mut w, m, n, j, t, &q);
                col_axpy(&mut v, n, n, j, t, &q);
                if !w[t * n + j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility of the remaining block
            let mut bad = None;
            'outer: for i in t + 1..m {
                for j in t + 1..n {
                    if !w[i * n + j].is_multiple_of(&p) {
                        bad = Some(i);
                        break 'outer;
                    }
                }
            }
            match bad {
                Some(i) => {
                    let mone = -BigInt::one();
                    row_op(&mut w, &mut u, &mut ui, t, i, &mone);
                }
                None => break,
            }
        }
        if w[t * n + t].is_negative() {
            for j in 0..n {
                let x = std::mem::take(&mut w[t * n + j]);
                w[t * n + j] = -x;
            }
            for j in 0..m {
                let x = std::mem::take(&mut u[t * m + j]);
                u[t * m + j] = -x;
            }
            if let Some(ui) = ui.as_mut() {
                for i in 0..m {
                    let x = std::mem::take(&mut ui[i * m + t]);
                    ui[i * m + t] = -x;
                }
            }
        }
        t += 1;
    }
    finish(a, w, u, v, ui, m, n)
}

fn finish(
    _a: &IntMatrix,
    w: Vec<BigInt>,
    u: Vec<BigInt>,
    v: Vec<BigInt>,
    ui: Option<Vec<BigInt>>,
    m: usize,
    n: usize,
) -> SmithFull {
    let divisors = (0..m.min(n)).map(|i| w[i * n + i].clone()).collect();
    SmithFull {
        dec: SmithDecomposition {
            u: IntMatrix { rows: m, cols: m, data: u },
            s: IntMatrix { rows: m, cols: n, data: w },
            v: IntMatrix { rows: n, cols: n, data: v },
            divisors,
        },
        u_inv: ui.map(|data| IntMatrix { rows: m, cols: m, data }),
    }
}

/// Row-echelon Hermite basis of the lattice spanned by the columns of `gens`.
///
/// Each basis vector is `(pivot, vector)`: zero before `pivot`, positive at it,
/// and pivots strictly increase. Entries of a vector at later pivots are reduced
/// into `[0, pivot value)`.
pub fn hermite_basis(gens: &IntMatrix) -> Vec<(usize, Vec<BigInt>)> {
    let dim = gens.rows();
    let mut rows: Vec<Vec<BigInt>> = gens.columns().into_iter().filter(|c| c.iter().any(|x| !x.is_zero())).collect();
    let mut basis: Vec<(usize, Vec<BigInt>)> = Vec::new();
    for c in 0..dim {
        if rows.is_empty() {
            break;
        }
        // gcd-combine column c among remaining rows
        loop {
            let mut best: Option<usize> = None;
            for (k, r) in rows.iter().enumerate() {
                if r[c].is_zero() {
                    continue;
                }
                if best.map_or(true, |b| r[c].magnitude() < rows[b][c].magnitude()) {
                    best = Some(k);
                }
            }
            let Some(b) = best else { break };
            let piv = rows[b][c].clone();
            let mut again = false;
            for k in 0..rows.len() {
                if k == b || rows[k][c].is_zero() {
                    continue;
                }
                let q = rows[k][c].div_floor(&piv);
                let src = rows[b].clone();
                for (x, y) in rows[k].iter_mut().zip(&src) {
                    if !y.is_zero() {
                        *x -= &q * y;
                    }
                }
                if !rows[k][c].is_zero() {
                    again = true;
                }
            }
            if !again {
                let mut r = rows.swap_remove(b);
                if r[c].is_negative() {
                    for x in r.iter_mut() {
                        *x = -std::mem::take(x);
                    }
                }
                basis.push((c, r));
                rows.retain(|r| r.iter().any(|x| !x.is_zero()));
                break;
            }
        }
    }
    // reduce earlier vectors at later pivots
    for k in 1..basis.len() {
        let (pc, pv) = (basis[k].0, basis[k].1.clone());
        for b in basis.iter_mut().take(k) {
            let q = b.1[pc].div_floor(&pv[pc]);
            if !q.is_zero() {
                for (x, y) in b.1.iter_mut().zip(&pv) {
                    if !y.is_zero() {
                        *x -= &q * y;
                    }
                }
            }
        }
    }
    basis
}

/// Reduce `x` modulo a Hermite basis; the result is the canonical coset representative.
pub fn hermite_reduce(basis: &[(usize, Vec<BigInt>)], x: &mut [BigInt]) {
    for (p, b) in basis {
        let q = x[*p].div_floor(&b[*p]);
        if q.is_zero() {
            continue;
        }
        for (xi, bi) in x.iter_mut().zip(b) {
            if !bi.is_zero() {
                *xi -= &q * bi;
            }
        }
    }
}

/// Reusable integer solver for `A·x = b`.
pub struct IntSolver {
    a_cols: usize,
    snf: SmithDecomposition,
    rank: usize,
}

impl IntSolver {
    pub fn new(a: &IntMatrix) -> Self {
        let snf = smith_normal_form(a);
        let rank = snf.rank();
        IntSolver { a_cols: a.cols(), snf, rank }
    }

    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let y = self.snf.u.mul_vec(b);
        let mut z = vec![BigInt::zero(); self.a_cols];
        for (i, yi) in y.iter().enumerate() {
            if i < self.rank {
                let d = &self.snf.divisors[i];
                let (q, r) = yi.div_rem(d);
                if !r.is_zero() {
                    return None;
                }
                z[i] = q;
            } else if !yi.is_zero() {
                return None;
            }
        }
        Some(self.snf.v.mul_vec(&z))
    }

    /// Basis of the integer kernel `{x : A·x = 0}` as columns.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        (self.rank..self.a_cols).map(|j| self.snf.v.column(j)).collect()
    }
}

#[cfg(test)]
pub(crate) fn big(v: i64) -> BigInt {
    BigInt::from(v)
}
