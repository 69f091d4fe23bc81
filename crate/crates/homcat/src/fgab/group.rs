use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;
use std::sync::Arc;

use super::matrix::{hermite_basis, hermite_reduce, smith_impl, IntMatrix, SmithDecomposition};

/// Finitely generated abelian group: the cokernel of `presentation`, whose
/// columns are the relations among `generator_count` generators.
///
/// Cheap to clone; the data is shared.
#[derive(Clone)]
pub struct FgAbGroup(Arc<Inner>);

struct Inner {
    presentation: IntMatrix,
    smith: SmithDecomposition,
    free_rank: usize,
    torsion: Vec<BigInt>,
    // Standard coordinates: torsion components in divisor order, then free ones.
    to_std: IntMatrix,
    from_std: IntMatrix,
    std_mod: Vec<Option<BigInt>>,
    hermite: Vec<(usize, Vec<BigInt>)>,
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgAbGroup({} gens, {})", self.generator_count(), self.invariant_string())
    }
}

impl FgAbGroup {
    /// The columns of `rel` are relations. A matrix with zero columns presents a
    /// free group; zero rows present the trivial group. A zero divisor in the
    /// Smith form contributes a free summand, a divisor 1 contributes nothing.
    pub fn from_presentation(rel: IntMatrix) -> FgAbGroup {
        let m = rel.rows();
        let full = smith_impl(&rel, true);
        let smith = full.dec;
        let u_inv = full.u_inv.expect("tracked");
        let rank = smith.rank();
        let mut torsion = Vec::new();
        let mut std_rows = Vec::new();
        let mut std_mod = Vec::new();
        for i in 0..rank {
            let d = &smith.divisors[i];
            if !d.is_one() {
                torsion.push(d.clone());
                std_rows.push(i);
                std_mod.push(Some(d.clone()));
            }
        }
        for i in rank..m {
            std_rows.push(i);
            std_mod.push(None);
        }
        let free_rank = m - rank;
        let to_std = smith.u.select_rows(&std_rows);
        let from_std = u_inv.select_cols(&std_rows);
        let hermite = hermite_basis(&rel);
        FgAbGroup(Arc::new(Inner { presentation: rel, smith, free_rank, torsion, to_std, from_std, std_mod, hermite }))
    }

    /// `Z^free ⊕ Z/t1 ⊕ ...` presented on exactly the listed generators.
    pub fn standard(free: usize, torsion: &[i64]) -> FgAbGroup {
        let t: Vec<BigInt> = torsion.iter().map(|&d| BigInt::from(d)).collect();
        let n = t.len() + free;
        let rel = IntMatrix::diagonal(n, t.len(), &t);
        FgAbGroup::from_presentation(rel)
    }

    pub fn zero() -> FgAbGroup {
        FgAbGroup::from_presentation(IntMatrix::zeros(0, 0))
    }

    pub fn free(rank: usize) -> FgAbGroup {
        FgAbGroup::from_presentation(IntMatrix::zeros(rank, 0))
    }

    pub fn cyclic(n: i64) -> FgAbGroup {
        if n == 0 {
            return FgAbGroup::free(1);
        }
        FgAbGroup::from_presentation(IntMatrix::from_i64(&[&[n]]))
    }

    pub fn generator_count(&self) -> usize {
        self.0.presentation.rows()
    }

    pub fn presentation(&self) -> &IntMatrix {
        &self.0.presentation
    }

    pub fn smith(&self) -> &SmithDecomposition {
        &self.0.smith
    }

    pub fn free_rank(&self) -> usize {
        self.0.free_rank
    }

    /// Invariant factors greater than one, each dividing the next.
    pub fn torsion(&self) -> &[BigInt] {
        &self.0.torsion
    }

    pub fn invariants(&self) -> (usize, Vec<BigInt>) {
        (self.0.free_rank, self.0.torsion.clone())
    }

    pub fn is_trivial(&self) -> bool {
        self.0.free_rank == 0 && self.0.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.0.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.0.free_rank == 0
    }

    /// Order, or `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.0.free_rank > 0 {
            return None;
        }
        Some(self.0.torsion.iter().fold(BigInt::one(), |a, b| a * b))
    }

    /// Least positive `e` with `e·x = 0` for all `x`; zero when infinite.
    pub fn exponent(&self) -> BigInt {
        if self.0.free_rank > 0 {
            return BigInt::zero();
        }
        self.0.torsion.last().cloned().unwrap_or_else(BigInt::one)
    }

    pub fn same_invariants(&self, other: &FgAbGroup) -> bool {
        self.0.free_rank == other.0.free_rank && self.0.torsion == other.0.torsion
    }

    /// Canonical text form, e.g. `Z^2 ⊕ Z/2 ⊕ Z/6`; `0` for the trivial group.
    pub fn invariant_string(&self) -> String {
        let mut parts = Vec::new();
        match self.0.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.0.torsion {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" ⊕ ")
        }
    }

    pub(crate) fn std_dim(&self) -> usize {
        self.0.std_mod.len()
    }

    pub(crate) fn std_mod(&self) -> &[Option<BigInt>] {
        &self.0.std_mod
    }

    /// Matrix from generator coordinates to standard coordinates.
    pub(crate) fn to_std(&self) -> &IntMatrix {
        &self.0.to_std
    }

    /// Matrix from standard coordinates back to generator coordinates.
    pub(crate) fn from_std(&self) -> &IntMatrix {
        &self.0.from_std
    }

    /// Diagonal relation matrix of the standard form (std_dim × torsion count).
    pub(crate) fn std_relations(&self) -> IntMatrix {
        IntMatrix::diagonal(self.std_dim(), self.0.torsion.len(), &self.0.torsion)
    }

    pub(crate) fn reduce(&self, x: &mut [BigInt]) {
        hermite_reduce(&self.0.hermite, x);
    }

    pub(crate) fn hermite(&self) -> &[(usize, Vec<BigInt>)] {
        &self.0.hermite
    }

    pub fn element(&self, coords: Vec<BigInt>) -> AbElement {
        assert_eq!(coords.len(), self.generator_count(), "coordinate length");
        let mut c = coords;
        self.reduce(&mut c);
        AbElement { group: self.clone(), coords: c }
    }

    pub fn element_i64(&self, coords: &[i64]) -> AbElement {
        self.element(coords.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn zero_element(&self) -> AbElement {
        AbElement { group: self.clone(), coords: vec![BigInt::zero(); self.generator_count()] }
    }

    pub fn generator(&self, i: usize) -> AbElement {
        let mut c = vec![BigInt::zero(); self.generator_count()];
        c[i] = BigInt::one();
        self.element(c)
    }

    pub fn generators(&self) -> Vec<AbElement> {
        (0..self.generator_count()).map(|i| self.generator(i)).collect()
    }

    /// Element from standard coordinates.
    pub fn from_std_coords(&self, y: &[BigInt]) -> AbElement {
        self.element(self.0.from_std.mul_vec(y))
    }

    /// All elements of a finite group, in a fixed order. Panics if infinite.
    pub fn enumerate(&self) -> Vec<AbElement> {
        assert!(self.is_finite(), "cannot enumerate an infinite group");
        let mut out = vec![vec![]];
        for d in &self.0.torsion {
            let mut next = Vec::new();
            for prefix in &out {
                let mut k = BigInt::zero();
                while &k < d {
                    let mut p: Vec<BigInt> = prefix.clone();
                    p.push(k.clone());
                    next.push(p);
                    k += 1;
                }
            }
            out = next;
        }
        out.iter().map(|y| self.from_std_coords(y)).collect()
    }

    /// Same presentation matrix (not merely isomorphic).
    pub fn same_presentation(&self, other: &FgAbGroup) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.presentation == other.0.presentation
    }
}

impl PartialEq for FgAbGroup {
    fn eq(&self, other: &Self) -> bool {
        self.same_presentation(other)
    }
}

/// Element of an [`FgAbGroup`] in Hermite normal form, so equality is coordinatewise.
#[derive(Clone)]
pub struct AbElement {
    group: FgAbGroup,
    coords: Vec<BigInt>,
}

impl fmt::Debug for AbElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl PartialEq for AbElement {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords
    }
}
impl Eq for AbElement {}

impl std::hash::Hash for AbElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coords.hash(state)
    }
}

impl AbElement {
    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &AbElement) -> AbElement {
        let c = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        self.group.element(c)
    }

    pub fn neg(&self) -> AbElement {
        self.group.element(self.coords.iter().map(|a| -a).collect())
    }

    pub fn sub(&self, other: &AbElement) -> AbElement {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> AbElement {
        self.group.element(self.coords.iter().map(|a| a * k).collect())
    }

    /// Coordinates in the standard decomposition, torsion parts reduced.
    pub fn std_coords(&self) -> Vec<BigInt> {
        let y = self.group.to_std().mul_vec(&self.coords);
        y.into_iter()
            .zip(self.group.std_mod())
            .map(|(v, m)| match m {
                Some(d) => v.mod_floor(d),
                None => v,
            })
            .collect()
    }

    /// Additive order; zero when infinite.
    pub fn order(&self) -> BigInt {
        let mut o = BigInt::one();
        for (v, m) in self.std_coords().iter().zip(self.group.std_mod()) {
            match m {
                None if !v.is_zero() => return BigInt::zero(),
                None => {}
                Some(d) => {
                    let part = d / v.gcd(d);
                    o = o.lcm(&part);
                }
            }
        }
        o
    }
}
