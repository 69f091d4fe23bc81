//! Smith valuations over Z/p^k for large sparse integer matrices.
//!
//! Pass one keeps a reduced echelon basis with unit pivots; a column that
//! has no unit entry after reduction is dependent mod p and skipped. Pass two
//! rewrites every column against the final basis, keeping only the residual
//! on the non-pivot coordinates, and compresses those residuals into a small
//! dense matrix whose local Smith form is taken directly.

use rayon::prelude::*;

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Local {
    p: u32,
    k: u32,
    q: u32,
}

impl Local {
    pub(crate) fn new(p: u32, k: u32) -> Local {
        assert!(k >= 1 && (p as u64).pow(k) <= u16::MAX as u64);
        Local { p, k, q: p.pow(k) }
    }

    fn reduce(&self, v: i64) -> u16 {
        v.rem_euclid(self.q as i64) as u16
    }

    fn is_unit(&self, a: u16) -> bool {
        a as u32 % self.p != 0
    }

    fn val(&self, mut a: u32) -> u32 {
        let mut v = 0;
        while a % self.p == 0 && v < self.k {
            a /= self.p;
            v += 1;
        }
        v
    }

    fn unit_part(&self, mut a: u32) -> u32 {
        while a % self.p == 0 {
            a /= self.p;
        }
        a
    }

    fn inv(&self, a: u32) -> u32 {
        let (mut r0, mut r1) = (self.q as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let s = r0 / r1;
            (r0, r1) = (r1, r0 - s * r1);
            (t0, t1) = (t1, t0 - s * t1);
        }
        debug_assert_eq!(r0, 1);
        t0.rem_euclid(self.q as i64) as u32
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        a * b % self.q
    }

    /// `dst += f · src` over Z/q.
    fn axpy(&self, dst: &mut [u16], f: u32, src: &[u16]) {
        macro_rules! fixed {
            ($($q:literal)*) => {
                match self.q {
                    $($q => axpy_const::<$q>(dst, f, src),)*
                    _ => axpy_dyn(dst, f, src, self.q),
                }
            };
        }
        fixed!(2 3 4 5 7 8 9 11 13 16 17 19 23 25 27 32 49 64 81 121 125 128)
    }
}

fn axpy_const<const Q: u32>(dst: &mut [u16], f: u32, src: &[u16]) {
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = ((*d as u32 + f * s as u32) % Q) as u16;
    }
}

fn axpy_dyn(dst: &mut [u16], f: u32, src: &[u16], q: u32) {
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = ((*d as u32 + f * s as u32) % q) as u16;
    }
}

/// Reduced echelon basis over Z/p^k in which every pivot is a unit.
///
/// Rows are stored only on the coordinates that are not yet pivots; the
/// pivot entry is an implicit 1 and other pivot entries implicit zeros.
/// A new pivot removes its slot by swapping in the last free coordinate.
#[derive(Clone, Debug)]
pub(crate) struct Echelon {
    ring: Local,
    dim: usize,
    rows: Vec<Vec<u16>>,
    piv: Vec<u32>,
    free: Vec<u32>,
    slot: Vec<u32>,
}

impl Echelon {
    pub(crate) fn new(dim: usize, ring: Local) -> Echelon {
        Echelon {
            ring,
            dim,
            rows: Vec::new(),
            piv: vec![NONE; dim],
            free: (0..dim as u32).collect(),
            slot: (0..dim as u32).collect(),
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    /// Residual of a sparse integer vector on the free coordinates.
    fn residual_sparse(&self, col: &[(u32, i64)]) -> Vec<u16> {
        let q = self.ring.q;
        let mut w = vec![0u16; self.free.len()];
        for &(r, v) in col {
            let v = self.ring.reduce(v) as u32;
            if v == 0 {
                continue;
            }
            let i = self.piv[r as usize];
            if i != NONE {
                self.ring.axpy(&mut w, q - v, &self.rows[i as usize]);
            } else {
                let s = self.slot[r as usize] as usize;
                w[s] = ((w[s] as u32 + v) % q) as u16;
            }
        }
        w
    }

    fn residual_dense(&self, v: &[u16]) -> Vec<u16> {
        let q = self.ring.q;
        let mut w: Vec<u16> = self.free.iter().map(|&c| v[c as usize]).collect();
        for (c, &i) in self.piv.iter().enumerate() {
            if i != NONE && v[c] != 0 {
                self.ring.axpy(&mut w, q - v[c] as u32, &self.rows[i as usize]);
            }
        }
        w
    }

    /// Adds a residual if it has a unit entry; returns whether it did.
    fn push_residual(&mut self, mut w: Vec<u16>) -> bool {
        let ring = self.ring;
        let Some(s) = w.iter().position(|&x| ring.is_unit(x)) else { return false };
        let inv = ring.inv(w[s] as u32);
        for x in w.iter_mut() {
            *x = ring.mul(*x as u32, inv) as u16;
        }
        let q = ring.q;
        let last = self.free.len() - 1;
        for row in self.rows.iter_mut() {
            let f = row[s];
            if f != 0 {
                ring.axpy(row, q - f as u32, &w);
            }
            row.swap_remove(s);
        }
        w.swap_remove(s);
        let c = self.free.swap_remove(s);
        if s != last {
            self.slot[self.free[s] as usize] = s as u32;
        }
        self.slot[c as usize] = NONE;
        self.piv[c as usize] = self.rows.len() as u32;
        self.rows.push(w);
        true
    }

    pub(crate) fn insert_sparse(&mut self, col: &[(u32, i64)]) -> bool {
        let w = self.residual_sparse(col);
        self.push_residual(w)
    }

    pub(crate) fn insert_dense(&mut self, v: Vec<u16>) -> bool {
        let w = self.residual_dense(&v);
        self.push_residual(w)
    }

    /// Basis of the vectors orthogonal to the span, one per free coordinate.
    /// Only meaningful when the span is free (always true over a field).
    pub(crate) fn annihilator(&self) -> Vec<Vec<u16>> {
        let q = self.ring.q;
        (0..self.free.len())
            .map(|s| {
                let mut v = vec![0u16; self.dim];
                v[self.free[s] as usize] = 1;
                for (c, &i) in self.piv.iter().enumerate() {
                    if i != NONE {
                        let x = self.rows[i as usize][s] as u32;
                        v[c] = ((q - x) % q) as u16;
                    }
                }
                v
            })
            .collect()
    }
}

/// Valuations of the nonzero local Smith invariants of the matrix with the
/// given sparse columns (rows `0..dim`), over `Z/p^k`. Each returned value
/// is below `k`; the remaining invariants vanish mod `p^k`.
pub(crate) fn smith_valuations(dim: usize, cols: &[Vec<(u32, i64)>], ring: Local) -> Vec<u32> {
    if dim == 0 {
        return Vec::new();
    }
    let mut ech = Echelon::new(dim, ring);
    for col in cols {
        if ech.is_full() {
            break;
        }
        let w = ech.residual_sparse(col);
        if w.iter().any(|&x| ring.is_unit(x)) {
            ech.push_residual(w);
        }
    }
    let mut out = vec![0u32; ech.rank()];
    let f = ech.free.len();
    if f == 0 {
        return out;
    }
    // residuals are multiples of p; compress them chunk by chunk
    let chunk = 4096;
    let parts: Vec<Vec<Vec<u16>>> = cols
        .par_chunks(chunk)
        .map(|block| {
            let mut buf: Vec<Vec<u16>> = Vec::new();
            for col in block {
                let res = ech.residual_sparse(col);
                if res.iter().any(|&x| x != 0) {
                    buf.push(res);
                    if buf.len() > 4 * f + 64 {
                        echelon(&mut buf, f, &ring);
                    }
                }
            }
            echelon(&mut buf, f, &ring);
            buf
        })
        .collect();
    let mut all: Vec<Vec<u16>> = parts.into_iter().flatten().collect();
    echelon(&mut all, f, &ring);
    out.extend(dense_valuations(all, f, &ring));
    out.sort_unstable();
    out
}

/// Row echelon form over Z/q with minimal-valuation pivots; zero rows dropped.
fn echelon(m: &mut Vec<Vec<u16>>, cols: usize, ring: &Local) {
    let q = ring.q;
    let mut top = 0;
    for c in 0..cols {
        if top == m.len() {
            break;
        }
        let best = (top..m.len()).filter(|&i| m[i][c] != 0).min_by_key(|&i| ring.val(m[i][c] as u32));
        let Some(b) = best else { continue };
        m.swap(top, b);
        let pv = ring.val(m[top][c] as u32);
        let uinv = ring.inv(ring.unit_part(m[top][c] as u32));
        let (head, tail) = m.split_at_mut(top + 1);
        let pivot = &head[top];
        for row in tail.iter_mut() {
            let a = row[c] as u32;
            if a != 0 {
                // a = p^pv · t with t = a / p^pv
                let t = a / ring.p.pow(pv);
                let fct = ring.mul(t % q, uinv);
                ring.axpy(row, q - fct, pivot);
            }
        }
        top += 1;
    }
    m.truncate(top);
    m.retain(|r| r.iter().any(|&x| x != 0));
}

fn dense_valuations(mut m: Vec<Vec<u16>>, cols: usize, ring: &Local) -> Vec<u32> {
    let q = ring.q;
    let mut out = Vec::new();
    let rows = m.len();
    for t in 0..rows.min(cols) {
        let mut best: Option<(u32, usize, usize)> = None;
        for (i, row) in m.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 {
                    let v = ring.val(x as u32);
                    if best.map_or(true, |b| v < b.0) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let Some((v, i, j)) = best else { break };
        m.swap(t, i);
        for row in m.iter_mut() {
            row.swap(t, j);
        }
        let pv = ring.p.pow(v);
        let uinv = ring.inv(ring.unit_part(m[t][t] as u32));
        let pivot = m[t].clone();
        for row in m.iter_mut().skip(t + 1) {
            let a = row[t] as u32;
            if a != 0 {
                let fct = ring.mul(a / pv, uinv);
                ring.axpy(row, q - fct, &pivot);
            }
        }
        for jj in t + 1..cols {
            m[t][jj] = 0;
        }
        out.push(v);
    }
    out
}
