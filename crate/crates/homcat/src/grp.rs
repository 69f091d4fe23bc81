//! Finite groups given by Cayley tables.
//!
//! Elements are indices `0..order`. Permutation groups compose right to left:
//! `(xy)(i) = x(y(i))`. The commutator convention is `[k, l] = k l k⁻¹ l⁻¹`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::fgab::{AbElement, AbMorphism, FgAbGroup, IntMatrix};
use crate::{Error, Result};

/// Largest order accepted by the constructors.
pub const MAX_ORDER: usize = 512;

#[derive(Clone)]
pub struct FiniteGroup(Arc<GInner>);

struct GInner {
    n: usize,
    table: Vec<u32>,
    identity: usize,
    inv: Vec<u32>,
    orders: Vec<u32>,
    perms: Option<(usize, Vec<Vec<u32>>)>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {})", self.order())
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.identity == other.0.identity && self.0.table == other.0.table)
    }
}

impl FiniteGroup {
    /// Validates closure, identity, inverses and associativity.
    pub fn from_cayley(table: &[Vec<usize>], identity: usize) -> Result<FiniteGroup> {
        let n = table.len();
        if n == 0 || n > MAX_ORDER {
            return Err(Error::InvalidGroup(format!("order {n} outside 1..={MAX_ORDER}")));
        }
        if identity >= n {
            return Err(Error::InvalidGroup("identity index out of range".into()));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {i} has length {}", row.len())));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::InvalidGroup(format!("entry {v} in row {i} out of range")));
                }
                flat.push(v as u32);
            }
        }
        Self::from_flat(n, flat, identity, None)
    }

    fn from_flat(n: usize, table: Vec<u32>, identity: usize, perms: Option<(usize, Vec<Vec<u32>>)>) -> Result<FiniteGroup> {
        let m = |a: usize, b: usize| table[a * n + b] as usize;
        for a in 0..n {
            if m(identity, a) != a || m(a, identity) != a {
                return Err(Error::InvalidGroup(format!("{identity} is not a two-sided identity at {a}")));
            }
        }
        let mut inv = vec![u32::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| m(a, b) == identity) {
                Some(b) if m(b, a) == identity => inv[a] = b as u32,
                _ => return Err(Error::InvalidGroup(format!("element {a} has no two-sided inverse"))),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = m(a, b);
                for c in 0..n {
                    if m(ab, c) != m(a, m(b, c)) {
                        return Err(Error::InvalidGroup(format!("associativity fails at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let orders = (0..n)
            .map(|a| {
                let mut k = 1;
                let mut x = a;
                while x != identity {
                    x = m(x, a);
                    k += 1;
                }
                k
            })
            .collect();
        Ok(FiniteGroup(Arc::new(GInner { n, table, identity, inv, orders, perms })))
    }

    /// Closure of permutations of `0..degree`, identity at index 0.
    pub fn from_permutations(degree: usize, gens: &[Vec<usize>]) -> Result<FiniteGroup> {
        for g in gens {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&i| i >= degree || std::mem::replace(&mut seen[i], true)) {
                return Err(Error::InvalidGroup(format!("{g:?} is not a permutation of 0..{degree}")));
            }
        }
        let gens: Vec<Vec<u32>> = gens.iter().map(|g| g.iter().map(|&i| i as u32).collect()).collect();
        let id: Vec<u32> = (0..degree as u32).collect();
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<u32>, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &gens {
                let p: Vec<u32> = elems[i].iter().map(|&k| g[k as usize]).collect();
                if !index.contains_key(&p) {
                    if elems.len() >= MAX_ORDER {
                        return Err(Error::InvalidGroup(format!("permutation group exceeds order {MAX_ORDER}")));
                    }
                    index.insert(p.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(p);
                }
            }
        }
        let n = elems.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let p: Vec<u32> = elems[b].iter().map(|&k| elems[a][k as usize]).collect();
                table[a * n + b] = index[&p] as u32;
            }
        }
        Self::from_flat(n, table, 0, Some((degree, elems)))
    }

    /// Group on `0..n` with multiplication `f`.
    pub fn from_fn(n: usize, identity: usize, f: impl Fn(usize, usize) -> usize) -> Result<FiniteGroup> {
        if n == 0 || n > MAX_ORDER {
            return Err(Error::InvalidGroup(format!("order {n} outside 1..={MAX_ORDER}")));
        }
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let v = f(a, b);
                if v >= n {
                    return Err(Error::InvalidGroup(format!("product of {a} and {b} out of range")));
                }
                table.push(v as u32);
            }
        }
        Self::from_flat(n, table, identity, None)
    }

    pub fn trivial() -> FiniteGroup {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        Self::from_fn(n, 0, |a, b| (a + b) % n).expect("cyclic group")
    }

    pub fn symmetric(d: usize) -> FiniteGroup {
        if d <= 1 {
            return Self::trivial();
        }
        let mut cyc: Vec<usize> = (1..d).collect();
        cyc.push(0);
        let mut tr: Vec<usize> = (0..d).collect();
        tr.swap(0, 1);
        Self::from_permutations(d, &[cyc, tr]).expect("symmetric group")
    }

    pub fn alternating(d: usize) -> FiniteGroup {
        if d <= 2 {
            return Self::trivial();
        }
        // 3-cycles (0 1 i) generate
        let gens: Vec<Vec<usize>> = (2..d)
            .map(|i| {
                let mut p: Vec<usize> = (0..d).collect();
                p[0] = 1;
                p[1] = i;
                p[i] = 0;
                p
            })
            .collect();
        Self::from_permutations(d, &gens).expect("alternating group")
    }

    /// Symmetries of the regular `n`-gon, order `2n`.
    pub fn dihedral(n: usize) -> FiniteGroup {
        // (r^i s^e): index i + n e
        Self::from_fn(2 * n, 0, |a, b| {
            let (i, e) = (a % n, a / n);
            let (j, f) = (b % n, b / n);
            let j = if e == 1 { (n - j) % n } else { j };
            (i + j) % n + n * (e ^ f)
        })
        .expect("dihedral group")
    }

    /// Dicyclic group of order `4m`; `m = 2` is the quaternion group.
    pub fn dicyclic(m: usize) -> FiniteGroup {
        let n = 2 * m;
        // a^i x^e with a^n = 1, x^2 = a^m, x a x⁻¹ = a⁻¹
        Self::from_fn(2 * n, 0, |p, q| {
            let (i, e) = (p % n, p / n);
            let (j, f) = (q % n, q / n);
            let j = if e == 1 { (n - j) % n } else { j };
            let extra = if e == 1 && f == 1 { m } else { 0 };
            (i + j + extra) % n + n * (e ^ f)
        })
        .expect("dicyclic group")
    }

    pub fn quaternion() -> FiniteGroup {
        Self::dicyclic(2)
    }

    pub fn klein_four() -> FiniteGroup {
        Self::cyclic(2).product(&Self::cyclic(2))
    }

    /// `Z/n ⋊ Z/m` with the generator of `Z/m` acting by `x ↦ r x`; needs `r^m ≡ 1 (mod n)`.
    pub fn semidirect_cyclic(n: usize, m: usize, r: usize) -> Result<FiniteGroup> {
        let pow = |k: usize| (0..k).fold(1usize, |acc, _| acc * r % n.max(1));
        if pow(m) % n.max(1) != 1 % n.max(1) {
            return Err(Error::InvalidGroup(format!("{r}^{m} ≢ 1 mod {n}")));
        }
        Self::from_fn(n * m, 0, |p, q| {
            let (i, e) = (p % n, p / n);
            let (j, f) = (q % n, q / n);
            (i + pow(e) * j) % n + n * ((e + f) % m)
        })
    }

    /// Direct product, element `(g, h)` at index `g·|H| + h`.
    pub fn product(&self, h: &FiniteGroup) -> FiniteGroup {
        let (a, b) = (self.order(), h.order());
        Self::from_fn(a * b, self.identity() * b + h.identity(), |x, y| {
            self.mul(x / b, y / b) * b + h.mul(x % b, y % b)
        })
        .expect("direct product")
    }

    pub fn order(&self) -> usize {
        self.0.n
    }

    pub fn identity(&self) -> usize {
        self.0.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.0.table[a * self.0.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.0.inv[a] as usize
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.0.orders[a] as usize
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    /// Cayley table as nested rows.
    pub fn cayley(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        (0..n).map(|a| (0..n).map(|b| self.mul(a, b)).collect()).collect()
    }

    /// Permutation data when built from permutations.
    pub fn permutation(&self, a: usize) -> Option<Vec<usize>> {
        self.0.perms.as_ref().map(|(_, p)| p[a].iter().map(|&i| i as usize).collect())
    }

    pub fn is_perfect(&self) -> bool {
        commutator_subgroup(self).order() == self.order()
    }

    /// A small generating set, chosen greedily by descending element order.
    pub fn generators(&self) -> Vec<usize> {
        let mut by_order: Vec<usize> = self.elements().filter(|&a| a != self.identity()).collect();
        by_order.sort_by_key(|&a| (std::cmp::Reverse(self.element_order(a)), a));
        let mut gens = Vec::new();
        let mut span = vec![false; self.order()];
        span[self.identity()] = true;
        let mut count = 1;
        for a in by_order {
            if count == self.order() {
                break;
            }
            if span[a] {
                continue;
            }
            gens.push(a);
            let s = subgroup_generated(self, &gens);
            span.iter_mut().for_each(|x| *x = false);
            for &e in s.elements() {
                span[e] = true;
            }
            count = s.order();
        }
        gens
    }
}

/// Subset of a group closed under products and inverses.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: FiniteGroup,
    elements: Vec<usize>,
    member: Vec<bool>,
}

impl Subgroup {
    fn from_members(parent: &FiniteGroup, member: Vec<bool>) -> Subgroup {
        let elements = (0..parent.order()).filter(|&i| member[i]).collect();
        Subgroup { parent: parent.clone(), elements, member }
    }

    /// Checks closure.
    pub fn new(parent: &FiniteGroup, elems: &[usize]) -> Result<Subgroup> {
        let mut member = vec![false; parent.order()];
        for &e in elems {
            if e >= parent.order() {
                return Err(Error::InvalidGroup(format!("element {e} out of range")));
            }
            member[e] = true;
        }
        let s = Subgroup::from_members(parent, member);
        if !s.contains(parent.identity())
            || s.elements.iter().any(|&a| !s.contains(parent.inv(a)) || s.elements.iter().any(|&b| !s.contains(parent.mul(a, b))))
        {
            return Err(Error::InvalidGroup("subset is not a subgroup".into()));
        }
        Ok(s)
    }

    pub fn whole(g: &FiniteGroup) -> Subgroup {
        Subgroup::from_members(g, vec![true; g.order()])
    }

    pub fn trivial(g: &FiniteGroup) -> Subgroup {
        let mut m = vec![false; g.order()];
        m[g.identity()] = true;
        Subgroup::from_members(g, m)
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.member[a]
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&a| other.contains(a))
    }

    pub fn is_normal(&self) -> bool {
        let g = &self.parent;
        g.elements().all(|x| self.elements.iter().all(|&a| self.contains(g.mul(g.mul(x, a), g.inv(x)))))
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        let m = (0..self.parent.order()).map(|i| self.member[i] && other.member[i]).collect();
        Subgroup::from_members(&self.parent, m)
    }

    /// The subgroup generated by both.
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        let gens: Vec<usize> = self.elements.iter().chain(&other.elements).copied().collect();
        subgroup_generated(&self.parent, &gens)
    }

    /// As a group in its own right, with the inclusion.
    pub fn as_group(&self) -> (FiniteGroup, GroupHom) {
        let g = &self.parent;
        let pos: HashMap<usize, usize> = self.elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let h = FiniteGroup::from_fn(self.order(), pos[&g.identity()], |a, b| pos[&g.mul(self.elements[a], self.elements[b])])
            .expect("subgroup is a group");
        let incl = GroupHom { source: h.clone(), target: g.clone(), map: self.elements.clone() };
        (h, incl)
    }
}

pub fn subgroup_generated(g: &FiniteGroup, gens: &[usize]) -> Subgroup {
    let mut member = vec![false; g.order()];
    member[g.identity()] = true;
    let mut queue = VecDeque::from([g.identity()]);
    let gens: Vec<usize> = gens.iter().copied().filter(|&s| s != g.identity()).collect();
    while let Some(x) = queue.pop_front() {
        for &s in &gens {
            let y = g.mul(x, s);
            if !member[y] {
                member[y] = true;
                queue.push_back(y);
            }
        }
    }
    Subgroup::from_members(g, member)
}

pub fn normal_closure(g: &FiniteGroup, gens: &[usize]) -> Subgroup {
    let mut conj = Vec::new();
    for &s in gens {
        for x in g.elements() {
            conj.push(g.mul(g.mul(x, s), g.inv(x)));
        }
    }
    conj.sort_unstable();
    conj.dedup();
    subgroup_generated(g, &conj)
}

pub fn center(g: &FiniteGroup) -> Subgroup {
    let m = g.elements().map(|z| g.elements().all(|x| g.mul(z, x) == g.mul(x, z))).collect();
    Subgroup::from_members(g, m)
}

/// Subgroup generated by all `[k, l]`, `k ∈ K`, `l ∈ L`.
pub fn higgins_commutator(g: &FiniteGroup, k: &Subgroup, l: &Subgroup) -> Subgroup {
    let mut c: Vec<usize> = k.elements().iter().flat_map(|&a| l.elements().iter().map(move |&b| g.commutator(a, b))).collect();
    c.sort_unstable();
    c.dedup();
    subgroup_generated(g, &c)
}

pub fn commutator_subgroup(g: &FiniteGroup) -> Subgroup {
    let w = Subgroup::whole(g);
    higgins_commutator(g, &w, &w)
}

/// Structure-preserving map between finite groups.
#[derive(Clone, Debug)]
pub struct GroupHom {
    source: FiniteGroup,
    target: FiniteGroup,
    map: Vec<usize>,
}

impl GroupHom {
    pub fn new(source: &FiniteGroup, target: &FiniteGroup, map: Vec<usize>) -> Result<GroupHom> {
        if map.len() != source.order() || map.iter().any(|&y| y >= target.order()) {
            return Err(Error::InvalidMorphism("map has the wrong length or range".into()));
        }
        for a in source.elements() {
            for b in source.elements() {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(Error::InvalidMorphism(format!("f({a}·{b}) ≠ f({a})·f({b})")));
                }
            }
        }
        Ok(GroupHom { source: source.clone(), target: target.clone(), map })
    }

    pub fn identity(g: &FiniteGroup) -> GroupHom {
        GroupHom { source: g.clone(), target: g.clone(), map: g.elements().collect() }
    }

    pub fn trivial(g: &FiniteGroup, h: &FiniteGroup) -> GroupHom {
        GroupHom { source: g.clone(), target: h.clone(), map: vec![h.identity(); g.order()] }
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &GroupHom) -> GroupHom {
        assert_eq!(f.target.order(), self.source.order());
        GroupHom { source: f.source.clone(), target: self.target.clone(), map: f.map.iter().map(|&x| self.map[x]).collect() }
    }

    pub fn kernel(&self) -> Subgroup {
        let e = self.target.identity();
        Subgroup::from_members(&self.source, self.map.iter().map(|&y| y == e).collect())
    }

    pub fn image(&self) -> Subgroup {
        let mut m = vec![false; self.target.order()];
        for &y in &self.map {
            m[y] = true;
        }
        Subgroup::from_members(&self.target, m)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().order() == self.target.order()
    }

    pub fn same_map(&self, other: &GroupHom) -> bool {
        self.map == other.map
    }

    /// The map `A/K → B/L` induced by `self: A → B` through the given quotients.
    pub fn descend(&self, qa: &GroupHom, qb: &GroupHom) -> Result<GroupHom> {
        let mut m = vec![usize::MAX; qa.target.order()];
        for a in self.source.elements() {
            let (x, y) = (qa.apply(a), qb.apply(self.apply(a)));
            if m[x] == usize::MAX {
                m[x] = y;
            } else if m[x] != y {
                return Err(Error::InvalidMorphism("map does not descend to the quotients".into()));
            }
        }
        GroupHom::new(&qa.target, &qb.target, m)
    }
}

/// `G/N` with the projection; elements are cosets numbered by least representative.
pub fn quotient_group(g: &FiniteGroup, n: &Subgroup) -> Result<(FiniteGroup, GroupHom)> {
    if !n.is_normal() {
        return Err(Error::Precondition("quotient by a non-normal subgroup".into()));
    }
    let mut coset = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if coset[x] == usize::MAX {
            for &k in n.elements() {
                coset[g.mul(x, k)] = reps.len();
            }
            reps.push(x);
        }
    }
    let q = FiniteGroup::from_fn(reps.len(), coset[g.identity()], |a, b| coset[g.mul(reps[a], reps[b])])?;
    let proj = GroupHom { source: g.clone(), target: q.clone(), map: coset };
    Ok((q, proj))
}

/// `G/[G, G]` as an abelian group, with the unit `η: G → ab(G)`.
#[derive(Clone, Debug)]
pub struct Abelianisation {
    pub group: FgAbGroup,
    /// `η(g)` for every element `g`.
    pub unit: Vec<AbElement>,
    pub quotient: FiniteGroup,
    pub projection: GroupHom,
}

pub fn abelianisation(g: &FiniteGroup) -> Abelianisation {
    let (q, proj) = quotient_group(g, &commutator_subgroup(g)).expect("commutator subgroup is normal");
    let (group, coords) = abelian_presentation(&q);
    let unit = g.elements().map(|x| group.element_i64(&coords[proj.apply(x)])).collect();
    Abelianisation { group, unit, quotient: q, projection: proj }
}

/// Presentation of an abelian finite group read off its Cayley graph, with a
/// coordinate vector for every element.
pub fn abelian_presentation(q: &FiniteGroup) -> (FgAbGroup, Vec<Vec<i64>>) {
    let gens = q.generators();
    let r = gens.len();
    let mut coords: Vec<Option<Vec<i64>>> = vec![None; q.order()];
    coords[q.identity()] = Some(vec![0; r]);
    let mut rels: Vec<Vec<num_bigint::BigInt>> = Vec::new();
    let mut queue = VecDeque::from([q.identity()]);
    while let Some(x) = queue.pop_front() {
        let v = coords[x].clone().unwrap();
        for (i, &s) in gens.iter().enumerate() {
            let y = q.mul(x, s);
            let mut w = v.clone();
            w[i] += 1;
            match &coords[y] {
                None => {
                    coords[y] = Some(w);
                    queue.push_back(y);
                }
                Some(u) => {
                    let rel: Vec<num_bigint::BigInt> = w.iter().zip(u).map(|(a, b)| (a - b).into()).collect();
                    if rel.iter().any(|c| c != &num_bigint::BigInt::from(0)) {
                        rels.push(rel);
                    }
                }
            }
        }
    }
    let group = FgAbGroup::from_presentation(IntMatrix::from_columns(r, &rels));
    (group, coords.into_iter().map(|c| c.unwrap()).collect())
}

/// `ab(f): ab(G) → ab(H)`.
pub fn abelianisation_map(f: &GroupHom, ag: &Abelianisation, ah: &Abelianisation) -> Result<AbMorphism> {
    let gens = ag.quotient.generators();
    let imgs: Vec<AbElement> = gens
        .iter()
        .map(|&c| {
            let x = f.source().elements().find(|&x| ag.projection.apply(x) == c).unwrap();
            ah.unit[f.apply(x)].clone()
        })
        .collect();
    // generators of ab(G) are the cosets of `gens`, in order
    AbMorphism::from_images(&ag.group, &ah.group, &imgs)
}

/// Restrictions on a homomorphism search.
#[derive(Default)]
pub struct HomConstraints<'a> {
    /// Prescribed values `f(x) = y`.
    pub fixed: Vec<(usize, usize)>,
    /// Pointwise admissibility `allowed(x, f(x))`, checked as values appear.
    pub allowed: Option<&'a (dyn Fn(usize, usize) -> bool + Sync)>,
}

/// All homomorphisms `G → H` meeting the constraints, sorted by image vector.
pub fn hom_enumerate(g: &FiniteGroup, h: &FiniteGroup, c: &HomConstraints) -> Vec<GroupHom> {
    let gens = g.generators();
    let cands: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            let os = g.element_order(s);
            h.elements()
                .filter(|&y| os % h.element_order(y) == 0)
                .filter(|&y| c.allowed.map_or(true, |f| f(s, y)))
                .collect()
        })
        .collect();
    if gens.is_empty() {
        let t = GroupHom::trivial(g, h);
        return if check_complete(&t.map, c) { vec![t] } else { vec![] };
    }
    let first = cands[0].clone();
    let mut out: Vec<Vec<usize>> = first
        .par_iter()
        .flat_map_iter(|&y0| {
            let mut found = Vec::new();
            let mut images = vec![y0];
            search(g, h, &gens, &cands, c, &mut images, &mut found);
            found
        })
        .collect();
    out.sort();
    out.into_iter().map(|map| GroupHom { source: g.clone(), target: h.clone(), map }).collect()
}

fn check_complete(map: &[usize], c: &HomConstraints) -> bool {
    c.fixed.iter().all(|&(x, y)| map[x] == y) && c.allowed.map_or(true, |f| map.iter().enumerate().all(|(x, &y)| f(x, y)))
}

// Extends the partial map from the generators assigned so far; None on conflict.
fn extend(g: &FiniteGroup, h: &FiniteGroup, gens: &[usize], images: &[usize], c: &HomConstraints) -> Option<Vec<usize>> {
    let k = images.len();
    let mut map = vec![usize::MAX; g.order()];
    map[g.identity()] = h.identity();
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(x) = queue.pop_front() {
        for i in 0..k {
            let y = g.mul(x, gens[i]);
            let v = h.mul(map[x], images[i]);
            if map[y] == usize::MAX {
                if let Some(f) = c.allowed {
                    if !f(y, v) {
                        return None;
                    }
                }
                map[y] = v;
                queue.push_back(y);
            } else if map[y] != v {
                return None;
            }
        }
    }
    for &(x, y) in &c.fixed {
        if map[x] != usize::MAX && map[x] != y {
            return None;
        }
    }
    Some(map)
}

fn search(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    cands: &[Vec<usize>],
    c: &HomConstraints,
    images: &mut Vec<usize>,
    found: &mut Vec<Vec<usize>>,
) {
    let Some(map) = extend(g, h, gens, images, c) else { return };
    if images.len() == gens.len() {
        if check_complete(&map, c) {
            found.push(map);
        }
        return;
    }
    let i = images.len();
    // a generator already in the span has a forced image
    if map[gens[i]] != usize::MAX {
        images.push(map[gens[i]]);
        search(g, h, gens, cands, c, images, found);
        images.pop();
        return;
    }
    for &y in &cands[i] {
        images.push(y);
        search(g, h, gens, cands, c, images, found);
        images.pop();
    }
}

/// `A ↪ E ↠ X` with `ker π = im ι`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub a: FiniteGroup,
    pub e: FiniteGroup,
    pub x: FiniteGroup,
    pub iota: GroupHom,
    pub pi: GroupHom,
}

impl Extension {
    pub fn new(iota: GroupHom, pi: GroupHom) -> Result<Extension> {
        if iota.target() != pi.source() {
            return Err(Error::InvalidGroup("ι and π do not share the middle group".into()));
        }
        if !iota.is_injective() {
            return Err(Error::InvalidGroup("ι is not injective".into()));
        }
        if !pi.is_surjective() {
            return Err(Error::InvalidGroup("π is not surjective".into()));
        }
        let (im, ker) = (iota.image(), pi.kernel());
        if im.elements() != ker.elements() {
            return Err(Error::InvalidGroup("image of ι differs from kernel of π".into()));
        }
        Ok(Extension { a: iota.source().clone(), e: iota.target().clone(), x: pi.target().clone(), iota, pi })
    }

    /// `N ↪ G ↠ G/N`.
    pub fn from_normal(g: &FiniteGroup, n: &Subgroup) -> Result<Extension> {
        let (ng, incl) = n.as_group();
        let _ = ng;
        let (_, proj) = quotient_group(g, n)?;
        Extension::new(incl, proj)
    }

    /// `A ↪ A × X ↠ X`.
    pub fn split(a: &FiniteGroup, x: &FiniteGroup) -> Extension {
        let e = a.product(x);
        let b = x.order();
        let iota = GroupHom { source: a.clone(), target: e.clone(), map: a.elements().map(|i| i * b + x.identity()).collect() };
        let pi = GroupHom { source: e.clone(), target: x.clone(), map: e.elements().map(|i| i % b).collect() };
        Extension::new(iota, pi).expect("direct product extension")
    }

    pub fn kernel_image(&self) -> Subgroup {
        self.iota.image()
    }
}

/// The kernel commutes with everything: `[ι A, E] = 1`.
pub fn is_central_extension(e: &Extension) -> bool {
    higgins_commutator(&e.e, &e.kernel_image(), &Subgroup::whole(&e.e)).is_trivial()
}

/// 3×3 diagram `E_{ij}` with short exact rows `E_{i0} ↪ E_{i1} ↠ E_{i2}` and
/// columns `E_{0j} ↪ E_{1j} ↠ E_{2j}`.
#[derive(Clone, Debug)]
pub struct DoubleExtension {
    pub grid: [[FiniteGroup; 3]; 3],
    /// `rows[i] = [E_{i0} → E_{i1}, E_{i1} → E_{i2}]`
    pub rows: [[GroupHom; 2]; 3],
    /// `cols[j] = [E_{0j} → E_{1j}, E_{1j} → E_{2j}]`
    pub cols: [[GroupHom; 2]; 3],
}

impl DoubleExtension {
    pub fn new(rows: [[GroupHom; 2]; 3], cols: [[GroupHom; 2]; 3]) -> Result<DoubleExtension> {
        let grid: [[FiniteGroup; 3]; 3] = std::array::from_fn(|i| {
            [rows[i][0].source().clone(), rows[i][0].target().clone(), rows[i][1].target().clone()]
        });
        for i in 0..3 {
            Extension::new(rows[i][0].clone(), rows[i][1].clone()).map_err(|e| Error::InvalidGroup(format!("row {i}: {e}")))?;
            Extension::new(cols[i][0].clone(), cols[i][1].clone()).map_err(|e| Error::InvalidGroup(format!("column {i}: {e}")))?;
            for j in 0..3 {
                let from_col = if i < 2 { cols[j][i].source() } else { cols[j][1].target() };
                if from_col != &grid[i][j] {
                    return Err(Error::InvalidGroup(format!("E_{i}{j} differs between its row and column")));
                }
            }
        }
        for i in 0..2 {
            for j in 0..2 {
                // E_{ij} → E_{i,j+1} → E_{i+1,j+1} against E_{ij} → E_{i+1,j} → E_{i+1,j+1}
                let a = cols[j + 1][i].after(&rows[i][j]);
                let b = rows[i + 1][j].after(&cols[j][i]);
                if !a.same_map(&b) {
                    return Err(Error::InvalidGroup(format!("square at E_{i}{j} does not commute")));
                }
            }
        }
        Ok(DoubleExtension { grid, rows, cols })
    }

    /// The grid of `G` with normal subgroups `E_{10} = N1`, `E_{01} = N2`.
    pub fn from_normals(g: &FiniteGroup, n1: &Subgroup, n2: &Subgroup) -> Result<DoubleExtension> {
        if !n1.is_normal() || !n2.is_normal() {
            return Err(Error::Precondition("subgroups must be normal".into()));
        }
        let i12 = n1.intersect(n2);
        let j12 = n1.join(n2);
        let (e10, inc10) = n1.as_group();
        let (e01, inc01) = n2.as_group();
        let (e00, inc00) = i12.as_group();
        let (e12, q1) = quotient_group(g, n1)?;
        let (e21, q2) = quotient_group(g, n2)?;
        let (_e22, q12) = quotient_group(g, &j12)?;
        // E_{00} inside E_{10} and E_{01}
        let sub_in = |inc_big: &GroupHom, big: &FiniteGroup| -> Result<(GroupHom, Subgroup)> {
            let pos: HashMap<usize, usize> = inc_big.map().iter().enumerate().map(|(i, &x)| (x, i)).collect();
            let m: Vec<usize> = inc00.map().iter().map(|x| pos[x]).collect();
            let s = Subgroup::new(big, &m)?;
            Ok((GroupHom::new(&e00, big, m)?, s))
        };
        let (r0a, s_in_01) = sub_in(&inc01, &e01)?;
        let (c0a, s_in_10) = sub_in(&inc10, &e10)?;
        let (_e02, p02) = quotient_group(&e01, &s_in_01)?;
        let (_e20, p20) = quotient_group(&e10, &s_in_10)?;
        // E_{02} → E_{12}, E_{20} → E_{21}, and the maps into E_{22}
        let r0b = p02;
        let c0b = p20;
        let e02_to_e12 = q1.after(&inc01).descend(&r0b, &GroupHom::identity(&e12))?;
        let e20_to_e21 = q2.after(&inc10).descend(&c0b, &GroupHom::identity(&e21))?;
        let e12_to_e22 = q12.descend(&q1, &GroupHom::identity(q12.target()))?;
        let e21_to_e22 = q12.descend(&q2, &GroupHom::identity(q12.target()))?;
        let rows = [
            [r0a, r0b.clone()],
            [inc10.clone(), q1.clone()],
            [e20_to_e21.clone(), e21_to_e22.clone()],
        ];
        let cols = [
            [c0a, c0b.clone()],
            [inc01.clone(), q2.clone()],
            [e02_to_e12, e12_to_e22],
        ];
        DoubleExtension::new(rows, cols)
    }

    fn image_in_middle(&self, i: usize, j: usize) -> Subgroup {
        let g = &self.grid[1][1];
        match (i, j) {
            (1, 1) => Subgroup::whole(g),
            (1, 0) => self.rows[1][0].image(),
            (0, 1) => self.cols[1][0].image(),
            (0, 0) => self.rows[1][0].after(&self.cols[0][0]).image(),
            _ => unreachable!("only the upper-left block embeds in E_11"),
        }
    }
}

/// `[E_{00}, E_{11}] = 1` and `[E_{10}, E_{01}] = 1` inside `E_{11}`.
pub fn double_is_central(d: &DoubleExtension) -> bool {
    let g = &d.grid[1][1];
    higgins_commutator(g, &d.image_in_middle(0, 0), &d.image_in_middle(1, 1)).is_trivial()
        && higgins_commutator(g, &d.image_in_middle(1, 0), &d.image_in_middle(0, 1)).is_trivial()
}

/// One or two-fold extension, for the congruence search.
#[derive(Clone, Debug)]
pub enum AnyExtension {
    Single(Extension),
    Double(DoubleExtension),
}

/// A morphism of extensions fixing both ends, given by its middle component.
#[derive(Clone, Debug)]
pub struct CongruenceStep {
    pub from: usize,
    pub to: usize,
    pub middle: GroupHom,
}

#[derive(Clone, Debug)]
pub enum Congruence {
    /// A chain of morphisms; indices refer to `[e, e′, pool…]`.
    Yes(Vec<CongruenceStep>),
    No,
    Unknown,
}

/// Middle components `E_11 → E'_11` of morphisms fixing `A` and `X`.
pub fn extension_morphisms(e: &AnyExtension, f: &AnyExtension) -> Result<Vec<GroupHom>> {
    match (e, f) {
        (AnyExtension::Single(e), AnyExtension::Single(f)) => {
            if e.a != f.a || e.x != f.x {
                return Err(Error::Precondition("extensions do not share A and X".into()));
            }
            let fixed = e.a.elements().map(|a| (e.iota.apply(a), f.iota.apply(a))).collect();
            let allowed = |x: usize, y: usize| e.pi.apply(x) == f.pi.apply(y);
            Ok(hom_enumerate(&e.e, &f.e, &HomConstraints { fixed, allowed: Some(&allowed) }))
        }
        (AnyExtension::Double(e), AnyExtension::Double(f)) => {
            if e.grid[0][0] != f.grid[0][0] || e.grid[2][2] != f.grid[2][2] {
                return Err(Error::Precondition("extensions do not share the corner objects".into()));
            }
            let a_in = |d: &DoubleExtension| d.rows[1][0].after(&d.cols[0][0]);
            let to_x = |d: &DoubleExtension| d.cols[2][1].after(&d.rows[1][1]);
            let (ea, fa) = (a_in(e), a_in(f));
            let (ex, fx) = (to_x(e), to_x(f));
            let (e10, f10) = (e.image_in_middle(1, 0), f.image_in_middle(1, 0));
            let (e01, f01) = (e.image_in_middle(0, 1), f.image_in_middle(0, 1));
            let fixed = e.grid[0][0].elements().map(|a| (ea.apply(a), fa.apply(a))).collect();
            let allowed = |x: usize, y: usize| {
                ex.apply(x) == fx.apply(y) && (!e10.contains(x) || f10.contains(y)) && (!e01.contains(x) || f01.contains(y))
            };
            Ok(hom_enumerate(&e.grid[1][1], &f.grid[1][1], &HomConstraints { fixed, allowed: Some(&allowed) }))
        }
        _ => Err(Error::Precondition("extensions of different arity".into())),
    }
}

/// Decides congruence exactly for one-fold extensions (every morphism fixing
/// the ends is an isomorphism). For two-fold ones, searches direct morphisms
/// and zigzags through `pool` with at most `zigzag_bound` steps.
pub fn extensions_congruent(e: &AnyExtension, f: &AnyExtension, pool: &[AnyExtension], zigzag_bound: usize) -> Result<Congruence> {
    let step = |from: usize, to: usize, m: GroupHom| CongruenceStep { from, to, middle: m };
    if let Some(m) = extension_morphisms(e, f)?.into_iter().next() {
        return Ok(Congruence::Yes(vec![step(0, 1, m)]));
    }
    if let (AnyExtension::Single(_), AnyExtension::Single(_)) = (e, f) {
        return Ok(Congruence::No);
    }
    if let Some(m) = extension_morphisms(f, e)?.into_iter().next() {
        return Ok(Congruence::Yes(vec![step(1, 0, m)]));
    }
    if zigzag_bound >= 2 {
        for (k, m) in pool.iter().enumerate() {
            let idx = k + 2;
            let fwd = |x: &AnyExtension, y: &AnyExtension| extension_morphisms(x, y).map(|v| v.into_iter().next());
            // e → m ← f
            if let (Some(a), Some(b)) = (fwd(e, m)?, fwd(f, m)?) {
                return Ok(Congruence::Yes(vec![step(0, idx, a), step(1, idx, b)]));
            }
            // e ← m → f
            if let (Some(a), Some(b)) = (fwd(m, e)?, fwd(m, f)?) {
                return Ok(Congruence::Yes(vec![step(idx, 0, a), step(idx, 1, b)]));
            }
        }
    }
    Ok(Congruence::Unknown)
}

#[cfg(test)]
mod tests;
