use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;

use super::group::{AbElement, FgAbGroup};
use super::matrix::{hermite_basis, IntMatrix, IntSolver};
use crate::{Error, Result};

/// Morphism of finitely generated abelian groups. `matrix` has one column per
/// source generator, holding the coordinates of its image.
#[derive(Clone)]
pub struct AbMorphism {
    source: FgAbGroup,
    target: FgAbGroup,
    matrix: IntMatrix,
}

impl fmt::Debug for AbMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbMorphism({:?} -> {:?}, {:?})", self.source, self.target, self.matrix)
    }
}

impl AbMorphism {
    /// Checks shape and that every source relation lands in the target relation lattice.
    pub fn new(source: &FgAbGroup, target: &FgAbGroup, matrix: IntMatrix) -> Result<AbMorphism> {
        if matrix.rows() != target.generator_count() || matrix.cols() != source.generator_count() {
            return Err(Error::Shape(format!(
                "morphism matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.generator_count(),
                source.generator_count()
            )));
        }
        let rel = source.presentation();
        for j in 0..rel.cols() {
            let img = matrix.mul_vec(&rel.column(j));
            if !target.element(img).is_zero() {
                return Err(Error::InvalidMorphism(format!("relation {j} of the source is not mapped to zero")));
            }
        }
        Ok(AbMorphism { source: source.clone(), target: target.clone(), matrix })
    }

    pub(crate) fn new_unchecked(source: &FgAbGroup, target: &FgAbGroup, matrix: IntMatrix) -> AbMorphism {
        debug_assert_eq!(matrix.rows(), target.generator_count());
        debug_assert_eq!(matrix.cols(), source.generator_count());
        AbMorphism { source: source.clone(), target: target.clone(), matrix }
    }

    /// Morphism determined by the images of the source generators.
    pub fn from_images(source: &FgAbGroup, target: &FgAbGroup, images: &[AbElement]) -> Result<AbMorphism> {
        if images.len() != source.generator_count() {
            return Err(Error::Shape(format!("{} images for {} generators", images.len(), source.generator_count())));
        }
        let cols: Vec<Vec<BigInt>> = images.iter().map(|e| e.coords().to_vec()).collect();
        AbMorphism::new(source, target, IntMatrix::from_columns(target.generator_count(), &cols))
    }

    pub fn identity(g: &FgAbGroup) -> AbMorphism {
        AbMorphism::new_unchecked(g, g, IntMatrix::identity(g.generator_count()))
    }

    pub fn zero(source: &FgAbGroup, target: &FgAbGroup) -> AbMorphism {
        AbMorphism::new_unchecked(source, target, IntMatrix::zeros(target.generator_count(), source.generator_count()))
    }

    /// Multiplication by `k` on a group.
    pub fn scalar(g: &FgAbGroup, k: i64) -> AbMorphism {
        AbMorphism::new_unchecked(g, g, IntMatrix::identity(g.generator_count()).scale(&BigInt::from(k)))
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &AbElement) -> AbElement {
        self.target.element(self.matrix.mul_vec(x.coords()))
    }

    pub fn images(&self) -> Vec<AbElement> {
        (0..self.source.generator_count()).map(|j| self.target.element(self.matrix.column(j))).collect()
    }

    /// `self ∘ f`
    pub fn compose(&self, f: &AbMorphism) -> Result<AbMorphism> {
        if self.source != f.target {
            return Err(Error::Shape("composition of non-composable morphisms".into()));
        }
        AbMorphism::new(&f.source, &self.target, self.matrix.mul(&f.matrix))
    }

    /// Composite that skips revalidation; both factors are already valid.
    pub(crate) fn after(&self, f: &AbMorphism) -> AbMorphism {
        assert!(self.source == f.target, "composition of non-composable morphisms");
        AbMorphism::new_unchecked(&f.source, &self.target, self.matrix.mul(&f.matrix))
    }

    pub fn add(&self, other: &AbMorphism) -> Result<AbMorphism> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Shape("sum of morphisms with different ends".into()));
        }
        Ok(AbMorphism::new_unchecked(&self.source, &self.target, self.matrix.add(&other.matrix)))
    }

    pub fn neg(&self) -> AbMorphism {
        AbMorphism::new_unchecked(&self.source, &self.target, self.matrix.neg())
    }

    pub fn scale(&self, k: &BigInt) -> AbMorphism {
        AbMorphism::new_unchecked(&self.source, &self.target, self.matrix.scale(k))
    }

    pub fn is_zero(&self) -> bool {
        self.images().iter().all(|e| e.is_zero())
    }

    /// Equality as maps (images of generators agree).
    pub fn same_map(&self, other: &AbMorphism) -> bool {
        self.source == other.source && self.target == other.target && self.images() == other.images()
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.same_map(&AbMorphism::identity(&self.source))
    }

    /// Matrix in standard coordinates (target std × source std), unreduced.
    pub(crate) fn std_matrix(&self) -> IntMatrix {
        self.target.to_std().mul(&self.matrix).mul(self.source.from_std())
    }

    pub fn is_mono(&self) -> bool {
        kernel(self).0.is_trivial()
    }

    pub fn is_epi(&self) -> bool {
        cokernel(self).0.is_trivial()
    }

    pub fn is_iso(&self) -> bool {
        self.is_mono() && self.is_epi()
    }

    /// Some `x` with `self(x) = y`.
    pub fn preimage(&self, y: &AbElement) -> Option<AbElement> {
        Lifter::new(self).lift(y)
    }
}

/// Solves `f(x) = y` repeatedly for a fixed `f`.
pub(crate) struct Lifter {
    source: FgAbGroup,
    ngen: usize,
    solver: IntSolver,
}

impl Lifter {
    pub fn new(f: &AbMorphism) -> Lifter {
        let a = f.matrix.hstack(f.target.presentation());
        Lifter { source: f.source.clone(), ngen: f.source.generator_count(), solver: IntSolver::new(&a) }
    }

    pub fn lift(&self, y: &AbElement) -> Option<AbElement> {
        let sol = self.solver.solve(y.coords())?;
        Some(self.source.element(sol[..self.ngen].to_vec()))
    }
}

/// Kernel with its inclusion `ι: K → source(f)`.
pub fn kernel(f: &AbMorphism) -> (FgAbGroup, AbMorphism) {
    let a = &f.source;
    let b = &f.target;
    let ms = f.std_matrix();
    let ka = a.std_dim();
    // {x : ms·x ∈ std relations of B}
    let n = ms.hstack(&b.std_relations().neg());
    let sol = IntSolver::new(&n);
    let gens: Vec<Vec<BigInt>> = sol.kernel_basis().into_iter().map(|v| v[..ka].to_vec()).collect();
    let gen_mat = IntMatrix::from_columns(ka, &gens);
    let basis = hermite_basis(&gen_mat);
    let kb = IntMatrix::from_columns(ka, &basis.iter().map(|(_, v)| v.clone()).collect::<Vec<_>>());
    // relations of A expressed in the basis kb
    let ksolver = IntSolver::new(&kb);
    let arel = a.std_relations();
    let mut rels = Vec::new();
    for j in 0..arel.cols() {
        let c = ksolver.solve(&arel.column(j)).expect("source relations lie in the kernel lattice");
        rels.push(c);
    }
    let k = FgAbGroup::from_presentation(IntMatrix::from_columns(kb.cols(), &rels));
    let incl = AbMorphism::new_unchecked(&k, a, a.from_std().mul(&kb));
    (k, incl)
}

/// Cokernel with its projection `q: target(f) → Q`.
pub fn cokernel(f: &AbMorphism) -> (FgAbGroup, AbMorphism) {
    let b = &f.target;
    let rel = b.std_relations().hstack(&f.std_matrix());
    let q = FgAbGroup::from_presentation(rel);
    let proj = AbMorphism::new_unchecked(b, &q, b.to_std().clone());
    (q, proj)
}

/// `f = mono ∘ epi`, with the image realised as the kernel of the cokernel projection.
pub fn image_factorization(f: &AbMorphism) -> (FgAbGroup, AbMorphism, AbMorphism) {
    let (_, q) = cokernel(f);
    let (im, mono) = kernel(&q);
    let epi = factor_through_mono(&mono, f).expect("f factors through its image");
    (im, epi, mono)
}

/// Unique `g` with `mono ∘ g = f`, if `f` lands in the image of `mono`.
pub fn factor_through_mono(mono: &AbMorphism, f: &AbMorphism) -> Option<AbMorphism> {
    if mono.target != f.target {
        return None;
    }
    let lifter = Lifter::new(mono);
    let mut imgs = Vec::new();
    for y in f.images() {
        imgs.push(lifter.lift(&y)?);
    }
    let g = AbMorphism::from_images(&f.source, &mono.source, &imgs).ok()?;
    if mono.after(&g).same_map(f) {
        Some(g)
    } else {
        None
    }
}

/// Unique `h` with `h ∘ epi = g`, if `g` kills the kernel of `epi`.
pub fn factor_through_epi(epi: &AbMorphism, g: &AbMorphism) -> Option<AbMorphism> {
    if epi.source != g.source {
        return None;
    }
    let lifter = Lifter::new(epi);
    let mut imgs = Vec::new();
    for q in epi.target.generators() {
        let b = lifter.lift(&q)?;
        imgs.push(g.apply(&b));
    }
    let h = AbMorphism::from_images(&epi.target, &g.target, &imgs).ok()?;
    if h.after(epi).same_map(g) {
        Some(h)
    } else {
        None
    }
}

/// Bijection between elements of `Hom(A, B)` (as a group) and morphisms `A → B`.
#[derive(Clone)]
pub struct HomEvaluator {
    a: FgAbGroup,
    b: FgAbGroup,
    hom: FgAbGroup,
    // (source std index, target std index, multiplier)
    pairs: Vec<(usize, usize, BigInt)>,
}

impl HomEvaluator {
    pub fn group(&self) -> &FgAbGroup {
        &self.hom
    }

    pub fn evaluate(&self, h: &AbElement) -> AbMorphism {
        let ka = self.a.std_dim();
        let kb = self.b.std_dim();
        let mut ms = IntMatrix::zeros(kb, ka);
        for (p, (i, j, c)) in self.pairs.iter().enumerate() {
            let v = ms.get(*j, *i) + &h.coords()[p] * c;
            ms.set(*j, *i, v);
        }
        let m = self.b.from_std().mul(&ms).mul(self.a.to_std());
        AbMorphism::new(&self.a, &self.b, m).expect("evaluator produces valid morphisms")
    }

    pub fn encode(&self, f: &AbMorphism) -> AbElement {
        let ms = f.std_matrix();
        let mut coords = Vec::with_capacity(self.pairs.len());
        for (i, j, c) in &self.pairs {
            let mut e = ms.get(*j, *i).clone();
            if let Some(d) = &self.b.std_mod()[*j] {
                e = e.mod_floor(d);
            }
            let (q, r) = e.div_rem(c);
            assert!(r.is_zero(), "morphism entry not divisible by its Hom multiplier");
            coords.push(q);
        }
        self.hom.element(coords)
    }
}

/// `Hom(A, B)` with a bijective evaluator.
pub fn hom_group(a: &FgAbGroup, b: &FgAbGroup) -> (FgAbGroup, HomEvaluator) {
    let mut pairs = Vec::new();
    let mut orders = Vec::new();
    for (i, ma) in a.std_mod().iter().enumerate() {
        for (j, mb) in b.std_mod().iter().enumerate() {
            match (ma, mb) {
                (Some(x), Some(y)) => {
                    let g = x.gcd(y);
                    if g.is_one() {
                        continue;
                    }
                    pairs.push((i, j, y / &g));
                    orders.push(Some(g));
                }
                (Some(_), None) => {}
                (None, Some(y)) => {
                    pairs.push((i, j, BigInt::one()));
                    orders.push(Some(y.clone()));
                }
                (None, None) => {
                    pairs.push((i, j, BigInt::one()));
                    orders.push(None);
                }
            }
        }
    }
    let n = pairs.len();
    let tors: Vec<(usize, BigInt)> = orders.iter().enumerate().filter_map(|(p, o)| o.clone().map(|d| (p, d))).collect();
    let mut rel = IntMatrix::zeros(n, tors.len());
    for (c, (p, d)) in tors.iter().enumerate() {
        rel.set(*p, c, d.clone());
    }
    let hom = FgAbGroup::from_presentation(rel);
    (hom.clone(), HomEvaluator { a: a.clone(), b: b.clone(), hom, pairs })
}

/// `A ⊗ M`, generators `a_i ⊗ m_j` at index `i·gens(M) + j`.
pub fn tensor(a: &FgAbGroup, m: &FgAbGroup) -> FgAbGroup {
    let ia = IntMatrix::identity(a.generator_count());
    let im = IntMatrix::identity(m.generator_count());
    let rel = a.presentation().kron(&im).hstack(&ia.kron(m.presentation()));
    FgAbGroup::from_presentation(rel)
}

/// `f ⊗ id_M : A ⊗ M → A' ⊗ M`.
pub fn tensor_map(f: &AbMorphism, m: &FgAbGroup) -> AbMorphism {
    let src = tensor(&f.source, m);
    let tgt = tensor(&f.target, m);
    tensor_map_between(f, m, &src, &tgt)
}

/// As [`tensor_map`] with the tensor products supplied (avoids rebuilding them).
pub fn tensor_map_between(f: &AbMorphism, m: &FgAbGroup, src: &FgAbGroup, tgt: &FgAbGroup) -> AbMorphism {
    let im = IntMatrix::identity(m.generator_count());
    AbMorphism::new_unchecked(src, tgt, f.matrix.kron(&im))
}

/// `id_A ⊗ g : A ⊗ M → A ⊗ M'`.
pub fn tensor_map_right(a: &FgAbGroup, g: &AbMorphism) -> AbMorphism {
    let src = tensor(a, &g.source);
    let tgt = tensor(a, &g.target);
    let ia = IntMatrix::identity(a.generator_count());
    AbMorphism::new_unchecked(&src, &tgt, ia.kron(&g.matrix))
}

/// The elementary tensor `x ⊗ y` in `tensor(A, M)`.
pub fn tensor_element(t: &FgAbGroup, x: &AbElement, y: &AbElement) -> AbElement {
    let mut c = Vec::with_capacity(x.coords().len() * y.coords().len());
    for a in x.coords() {
        for b in y.coords() {
            c.push(a * b);
        }
    }
    t.element(c)
}

/// Biproduct with injections and projections.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub group: FgAbGroup,
    pub injections: Vec<AbMorphism>,
    pub projections: Vec<AbMorphism>,
}

pub fn direct_sum(parts: &[FgAbGroup]) -> DirectSum {
    let pres: Vec<&IntMatrix> = parts.iter().map(|g| g.presentation()).collect();
    let group = FgAbGroup::from_presentation(IntMatrix::block_diag(&pres));
    let total = group.generator_count();
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    let mut off = 0;
    for g in parts {
        let k = g.generator_count();
        let mut inj = IntMatrix::zeros(total, k);
        let mut proj = IntMatrix::zeros(k, total);
        for i in 0..k {
            inj.set(off + i, i, BigInt::one());
            proj.set(i, off + i, BigInt::one());
        }
        injections.push(AbMorphism::new_unchecked(g, &group, inj));
        projections.push(AbMorphism::new_unchecked(&group, g, proj));
        off += k;
    }
    DirectSum { group, injections, projections }
}

/// Mutually inverse isomorphisms when the invariants agree.
pub fn iso_witness(a: &FgAbGroup, b: &FgAbGroup) -> Option<(AbMorphism, AbMorphism)> {
    if !a.same_invariants(b) {
        return None;
    }
    let f = AbMorphism::new(a, b, b.from_std().mul(a.to_std())).ok()?;
    let g = AbMorphism::new(b, a, a.from_std().mul(b.to_std())).ok()?;
    if g.after(&f).is_identity() && f.after(&g).is_identity() {
        Some((f, g))
    } else {
        None
    }
}

/// Whether some epimorphism `a ↠ b` exists, decided from invariants.
///
/// Free summands of `b` use up free summands of `a`; the surplus free rank can
/// cover torsion. A torsion target is reachable iff for each prime power `p^j`
/// there are at least as many cyclic summands of order divisible by `p^j`.
pub fn admits_surjection(a: &FgAbGroup, b: &FgAbGroup) -> bool {
    if a.free_rank() < b.free_rank() {
        return false;
    }
    let surplus = a.free_rank() - b.free_rank();
    let mut primes = Vec::new();
    for d in b.torsion() {
        for p in prime_factors(d) {
            if !primes.contains(&p) {
                primes.push(p);
            }
        }
    }
    let count = |g: &FgAbGroup, pj: &BigInt| g.torsion().iter().filter(|d| d.is_multiple_of(pj)).count();
    for p in &primes {
        let mut pj = p.clone();
        while b.torsion().iter().any(|d| d.is_multiple_of(&pj)) {
            if count(a, &pj) + surplus < count(b, &pj) {
                return false;
            }
            pj *= p;
        }
    }
    true
}

pub(crate) fn prime_factors(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut m = n.clone();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        if m.is_multiple_of(&p) {
            out.push(p.clone());
            while m.is_multiple_of(&p) {
                m /= &p;
            }
        }
        p += 1;
    }
    if m > BigInt::one() {
        out.push(m);
    }
    out
}
