//! Acyclicity classes, the universal coefficient pairing, central extensions
//! of finite groups and certificates for universal central extensions.
//!
//! `T` is always the exponent-`k` abelianisation `G ↦ ab(G) ⊗ Z/k` (`k = 0`
//! is plain abelianisation); its derived functors are `L_n T(G) =
//! H_{n+1}(G; Z/k)` for `n ≥ 1`.


use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::chains::{homology_coker, int_map, ChainComplex};
use crate::derived::{yoneda_expand, FunctorSpec};
use crate::fgab::{
    from_cyclic_orders, hom_group, prime_factors, tensor, tensor_element, AbElement, AbMorphism, FgAbGroup,
    IntMatrix,
};
use crate::grp::{
    abelian_presentation, abelianisation, center, hom_enumerate, is_central_extension, quotient_group, Extension,
    FiniteGroup, GroupHom, HomConstraints,
};
use crate::grphom::{derived_reflector_with, group_cohomology, BarComplex, BarConfig, Echelon, Local};
use crate::{Error, Result};

/// `L_0 T(G), …, L_n T(G)` and membership in the nested classes
/// `𝒯_0 ⊇ 𝒯_1 ⊇ …`, where `G ∈ 𝒯_n` iff `L_0 = … = L_n = 0`.
#[derive(Clone, Debug)]
pub struct AcyclicityReport {
    pub group_order: usize,
    pub k: u64,
    pub values: Vec<FgAbGroup>,
    pub members: Vec<bool>,
}

impl AcyclicityReport {
    /// Largest `n` with `G ∈ 𝒯_n`.
    pub fn max_class(&self) -> Option<usize> {
        self.members.iter().rposition(|&m| m)
    }

    pub fn in_class(&self, n: usize) -> bool {
        self.members.get(n).copied().unwrap_or(false)
    }

    pub fn is_nested(&self) -> bool {
        self.members.windows(2).all(|w| w[0] || !w[1])
    }
}

pub fn acyclicity_class(g: &FiniteGroup, k: u64, n_max: usize) -> Result<AcyclicityReport> {
    acyclicity_class_with(g, k, n_max, &BarConfig::default())
}

pub fn acyclicity_class_with(g: &FiniteGroup, k: u64, n_max: usize, cfg: &BarConfig) -> Result<AcyclicityReport> {
    let values = (0..=n_max).map(|n| derived_reflector_with(g, n, k, cfg)).collect::<Result<Vec<_>>>()?;
    let mut members = Vec::with_capacity(values.len());
    let mut all = true;
    for v in &values {
        all &= v.is_trivial();
        members.push(all);
    }
    let r = AcyclicityReport { group_order: g.order(), k, values, members };
    assert!(r.is_nested());
    Ok(r)
}

/// One `Ext^i(G, M)` value in a [`TorsionExtReport`].
#[derive(Clone, Debug)]
pub struct ExtProbe {
    pub degree: usize,
    pub probe: FgAbGroup,
    pub ext: FgAbGroup,
}

#[derive(Clone, Debug)]
pub struct TorsionExtReport {
    pub acyclicity: AcyclicityReport,
    pub exts: Vec<ExtProbe>,
    /// `G ∈ 𝒯_n` implies every probed `Ext^i`, `i ≤ n`, vanishes.
    pub forward_ok: bool,
    /// A nonzero `Ext^i` comes with `G ∉ 𝒯_i`.
    pub backward_ok: bool,
}

impl TorsionExtReport {
    pub fn passed(&self) -> bool {
        self.forward_ok && self.backward_ok
    }
}

/// Checks `G ∈ 𝒯_n ⟺ Ext^i(G, M) = 0 for i ≤ n` on exponent-`k` probes.
pub fn torsion_ext_equivalence(g: &FiniteGroup, k: u64, n: usize, probes: &[FgAbGroup]) -> Result<TorsionExtReport> {
    for m in probes {
        if k > 0 && (!m.is_finite() || (BigInt::from(k) % m.exponent()) != BigInt::zero()) {
            return Err(Error::Precondition(format!("probe {} does not have exponent dividing {k}", m.invariant_string())));
        }
    }
    let acyclicity = acyclicity_class(g, k, n)?;
    let mut exts = Vec::new();
    for i in 0..=n {
        for m in probes {
            exts.push(ExtProbe { degree: i, probe: m.clone(), ext: group_cohomology(g, i, m)? });
        }
    }
    let forward_ok = !acyclicity.in_class(n) || exts.iter().all(|e| e.ext.is_trivial());
    let backward_ok = exts.iter().filter(|e| !e.ext.is_trivial()).all(|e| !acyclicity.in_class(e.degree));
    Ok(TorsionExtReport { acyclicity, exts, forward_ok, backward_ok })
}

/// Evaluation pairing `Ext^n(G, M) → Hom(L_n T(G), M)` and its checks.
#[derive(Clone, Debug)]
pub struct UctPairingReport {
    /// Set when `G` is not `(n−1)`-acyclic; nothing else is computed then.
    pub precondition: Option<String>,
    pub route: &'static str,
    pub ext: Option<FgAbGroup>,
    pub l_n: Option<FgAbGroup>,
    pub hom: Option<FgAbGroup>,
    pub well_defined: bool,
    pub injective: bool,
    pub cardinality_match: bool,
}

impl UctPairingReport {
    pub fn bijective(&self) -> bool {
        self.precondition.is_none() && self.well_defined && self.injective && self.cardinality_match
    }
}

const DENSE_PAIRING_COLS: usize = 4000;
const ENUMERATE_LIMIT: u64 = 1 << 14;

/// Pairs bar cocycles of degree `n + 1` with values in `M` against bar cycles
/// of degree `n + 1` with `Z/k` coefficients, `k` the exponent of `M`.
pub fn uct_pairing(g: &FiniteGroup, n: usize, m: &FgAbGroup) -> Result<UctPairingReport> {
    uct_pairing_with(g, n, m, &BarConfig::default())
}

pub fn uct_pairing_with(g: &FiniteGroup, n: usize, m: &FgAbGroup, cfg: &BarConfig) -> Result<UctPairingReport> {
    if !m.is_finite() || m.is_trivial() {
        return Err(Error::Precondition("coefficients must be a nonzero finite abelian group".into()));
    }
    let k = m.exponent().to_u64().ok_or_else(|| Error::Budget("exponent too large".into()))?;
    for i in 0..n {
        let l = derived_reflector_with(g, i, k, cfg)?;
        if !l.is_trivial() {
            return Ok(UctPairingReport {
                precondition: Some(format!("L_{i}T(G) = {} ≠ 0, so G is not {}-acyclic", l.invariant_string(), n - 1)),
                route: "none",
                ext: None,
                l_n: None,
                hom: None,
                well_defined: false,
                injective: false,
                cardinality_match: false,
            });
        }
    }
    let top = n + 1;
    let bar = BarComplex::new(g, top + 1, cfg)?;
    let prime = {
        let (free, tors) = m.invariants();
        (free == 0 && tors.len() == 1 && prime_factors(&tors[0]) == vec![tors[0].clone()]).then(|| tors[0].to_u32().unwrap())
    };
    if bar.dim(top + 1) <= DENSE_PAIRING_COLS {
        dense_pairing(&bar, top, m, k)
    } else if let Some(p) = prime {
        field_pairing(&bar, top, p)
    } else {
        Err(Error::Budget(format!(
            "pairing over {} needs {} dense columns (limit {DENSE_PAIRING_COLS}); only prime cyclic coefficients scale further",
            m.invariant_string(),
            bar.dim(top + 1)
        )))
    }
}

fn power_of(m: &FgAbGroup, copies: usize) -> FgAbGroup {
    FgAbGroup::from_presentation(IntMatrix::identity(copies).kron(m.presentation()))
}

fn dense_pairing(bar: &BarComplex, top: usize, m: &FgAbGroup, k: u64) -> Result<UctPairingReport> {
    let g_m = m.generator_count();
    let dn = if top == 0 { IntMatrix::zeros(0, 1) } else { bar.d(top).to_dense() };
    let dn1 = bar.d(top + 1).to_dense();
    let dims = [dn.rows(), dn.cols(), dn1.cols()];

    // cochains Hom(C_j, M) = M^{dim C_j}, indexed by negated degree
    let cochains: Vec<FgAbGroup> = dims.iter().rev().map(|&d| power_of(m, d)).collect();
    let idm = IntMatrix::identity(g_m);
    let delta_hi = AbMorphism::new(&cochains[1], &cochains[0], dn1.transpose().kron(&idm))?;
    let delta_lo = AbMorphism::new(&cochains[2], &cochains[1], dn.transpose().kron(&idm))?;
    let lo = -(top as i64) - 1;
    let dual = ChainComplex::new(lo, cochains.clone(), vec![delta_hi, delta_lo.clone()])?;
    let coh = homology_coker(&dual, -(top as i64))?;

    let chains_k: Vec<FgAbGroup> = dims.iter().map(|&d| FgAbGroup::standard(0, &vec![k as i64; d])).collect();
    let dk_lo = AbMorphism::new(&chains_k[1], &chains_k[0], dn.clone())?;
    let dk_hi = AbMorphism::new(&chains_k[2], &chains_k[1], dn1.clone())?;
    let cx = ChainComplex::new(top as i64 - 1, chains_k, vec![dk_lo, dk_hi])?;
    let hom_k = homology_coker(&cx, top as i64)?;

    let rep = |h: &crate::chains::CokerHomology, e: &AbElement| -> Vec<BigInt> {
        let c = h.proj.preimage(e).expect("homology projection is onto");
        h.cycle_incl.apply(&c).coords().to_vec()
    };
    let pair = |phi: &[BigInt], z: &[BigInt]| -> AbElement {
        let mut acc = vec![BigInt::zero(); g_m];
        for (t, zt) in z.iter().enumerate() {
            if zt.is_zero() {
                continue;
            }
            for (a, x) in acc.iter_mut().zip(&phi[t * g_m..(t + 1) * g_m]) {
                *a += zt * x;
            }
        }
        m.element(acc)
    };

    let ext = coh.group.clone();
    let l = hom_k.group.clone();
    let phis: Vec<Vec<BigInt>> = ext.generators().iter().map(|e| rep(&coh, e)).collect();
    let zs: Vec<Vec<BigInt>> = l.generators().iter().map(|e| rep(&hom_k, e)).collect();

    // coboundaries against cycles, cocycles against boundaries
    let mut well_defined = true;
    for psi in cochains[2].generators() {
        let cob = delta_lo.apply(&psi);
        well_defined &= zs.iter().all(|z| pair(cob.coords(), z).is_zero());
    }
    for j in 0..dn1.cols() {
        let b: Vec<BigInt> = dn1.column(j);
        well_defined &= phis.iter().all(|phi| pair(phi, &b).is_zero());
    }

    let (hom_lm, ev) = hom_group(&l, m);
    let mut images = Vec::new();
    for phi in &phis {
        let vals: Vec<AbElement> = zs.iter().map(|z| pair(phi, z)).collect();
        match AbMorphism::from_images(&l, m, &vals) {
            Ok(f) => images.push(ev.encode(&f)),
            Err(_) => well_defined = false,
        }
    }
    let theta = if well_defined { AbMorphism::from_images(&ext, &hom_lm, &images).ok() } else { None };
    well_defined &= theta.is_some();
    let cardinality_match = ext.order() == hom_lm.order();
    let injective = match &theta {
        None => false,
        Some(t) => {
            let small = ext.order().and_then(|o| o.to_u64()).map_or(false, |o| o <= ENUMERATE_LIMIT);
            if small {
                ext.enumerate().iter().all(|e| e.is_zero() || !t.apply(e).is_zero())
            } else {
                t.is_mono()
            }
        }
    };
    Ok(UctPairingReport {
        precondition: None,
        route: "dense",
        ext: Some(from_cyclic_orders(ext.invariants().0, &ext.invariants().1)),
        l_n: Some(from_cyclic_orders(l.invariants().0, &l.invariants().1)),
        hom: Some(from_cyclic_orders(hom_lm.invariants().0, &hom_lm.invariants().1)),
        well_defined,
        injective,
        cardinality_match,
    })
}

fn dot(a: &[u16], b: &[u16], p: u32) -> u32 {
    (a.iter().zip(b).map(|(&x, &y)| x as u64 * y as u64).sum::<u64>() % p as u64) as u32
}

fn sparse_dot(a: &[u16], col: &[(u32, i64)], p: u32) -> u32 {
    col.iter().map(|&(r, v)| (a[r as usize] as i64 * v).rem_euclid(p as i64)).sum::<i64>().rem_euclid(p as i64) as u32
}

// Over F_p everything is a vector space: cocycles are the annihilator of the
// boundaries, cycles the annihilator of the coboundary rows.
fn field_pairing(bar: &BarComplex, top: usize, p: u32) -> Result<UctPairingReport> {
    let ring = Local::new(p, 1);
    let dim = bar.dim(top);
    let boundaries = bar.d(top + 1).columns();
    let mut bnd = Echelon::new(dim, ring);
    for c in boundaries {
        if bnd.is_full() {
            break;
        }
        bnd.insert_sparse(c);
    }
    let mut rows: Vec<Vec<(u32, i64)>> = vec![Vec::new(); if top == 0 { 0 } else { bar.dim(top - 1) }];
    if top > 0 {
        for (j, c) in bar.d(top).columns().iter().enumerate() {
            for &(r, v) in c {
                rows[r as usize].push((j as u32, v));
            }
        }
    }
    let mut cob = Echelon::new(dim, ring);
    for r in &rows {
        cob.insert_sparse(r);
    }
    let expected = dim - bnd.rank() - cob.rank();

    let mut span = cob.clone();
    let phis: Vec<Vec<u16>> = bnd.annihilator().into_iter().filter(|v| span.insert_dense(v.clone())).collect();
    let mut span = bnd.clone();
    let zs: Vec<Vec<u16>> = cob.annihilator().into_iter().filter(|v| span.insert_dense(v.clone())).collect();

    let well_defined = phis.par_iter().all(|phi| boundaries.iter().all(|c| sparse_dot(phi, c, p) == 0))
        && zs.iter().all(|z| rows.iter().all(|r| sparse_dot(z, r, p) == 0));

    let a = phis.len();
    let b = zs.len();
    let matrix: Vec<Vec<u32>> = phis.iter().map(|phi| zs.iter().map(|z| dot(phi, z, p)).collect()).collect();
    let mut rank_ech = Echelon::new(b, ring);
    for row in &matrix {
        rank_ech.insert_dense(row.iter().map(|&x| x as u16).collect());
    }
    let injective = if (p as u64).checked_pow(a as u32).map_or(false, |c| c <= ENUMERATE_LIMIT) {
        // every nonzero class pairs nontrivially with some cycle
        (1..(p as u64).pow(a as u32)).all(|mut code| {
            let mut coeff = vec![0u32; a];
            for c in coeff.iter_mut() {
                *c = (code % p as u64) as u32;
                code /= p as u64;
            }
            (0..b).any(|j| (0..a).map(|i| coeff[i] * matrix[i][j]).sum::<u32>() % p != 0)
        })
    } else {
        rank_ech.rank() == a
    };
    let vs = |d: usize| FgAbGroup::standard(0, &vec![p as i64; d]);
    Ok(UctPairingReport {
        precondition: None,
        route: "field",
        ext: Some(vs(a)),
        l_n: Some(vs(b)),
        hom: Some(vs(b)),
        well_defined,
        injective,
        cardinality_match: a == b && b == expected,
    })
}

/// `|Hom(H_2(G), Z/p^k)|` for every `p | |G|` and `1 ≤ k ≤ v_p(|G|)`, with
/// the `H_2(G; Z)` these counts force.
#[derive(Clone, Debug)]
pub struct HomCounting {
    pub group: FgAbGroup,
    /// `(p^k, |Hom(H_2, Z/p^k)|)`.
    pub counts: Vec<(u64, u64)>,
}

pub fn hom_counting_h2(g: &FiniteGroup) -> Result<FgAbGroup> {
    Ok(hom_counting_h2_with(g, &BarConfig::default())?.group)
}

/// Reads `H_2(G; Z)` off `|H^2(G; Z/p^k)| = |Hom(H_2, Z/p^k)| · |Ext(H_1, Z/p^k)|`,
/// the left side from local Smith valuations of `d_2` and `d_3`.
pub fn hom_counting_h2_with(g: &FiniteGroup, cfg: &BarConfig) -> Result<HomCounting> {
    let order = g.order() as u64;
    let bar = BarComplex::new(g, 3, cfg)?;
    let h1 = abelianisation(g).group;
    let m2 = bar.dim(2) as u64;
    let mut counts = Vec::new();
    let mut tors = Vec::new();
    for p in prime_factors(&BigInt::from(order)) {
        let p = p.to_u64().unwrap();
        let mut v = 0;
        let mut o = order;
        while o % p == 0 {
            o /= p;
            v += 1;
        }
        let ring = Local::new(p as u32, v);
        let v3 = crate::grphom::smith_valuations(bar.dim(2), bar.d(3).columns(), ring);
        let v2 = crate::grphom::smith_valuations(bar.dim(1), bar.d(2).columns(), ring);
        // h[k] = log_p |Hom(H_2, Z/p^k)|
        let mut h = vec![0u64; v as usize + 2];
        for kk in 1..=v {
            let image = |vals: &[u32]| -> u64 { vals.iter().filter(|&&b| b < kk).map(|&b| (kk - b) as u64).sum() };
            let log_h2 = kk as u64 * m2 - image(&v3) - image(&v2);
            let correction = if h1.is_trivial() {
                0
            } else {
                let t = tensor(&h1, &FgAbGroup::cyclic(p.pow(kk) as i64));
                let mut o = t.order().unwrap().to_u64().unwrap();
                let mut e = 0;
                while o % p == 0 {
                    o /= p;
                    e += 1;
                }
                e
            };
            h[kk as usize] = log_h2 - correction;
            counts.push((p.pow(kk), p.pow(h[kk as usize] as u32)));
        }
        // #summands of exponent ≥ j is h[j] − h[j−1]
        for j in 1..=v as usize {
            let at_least = h[j] - h[j - 1];
            let above = if j < v as usize { h[j + 1] - h[j] } else { 0 };
            for _ in 0..at_least - above {
                tors.push(BigInt::from(p).pow(j as u32));
            }
        }
    }
    Ok(HomCounting { group: from_cyclic_orders(0, &tors), counts })
}

fn check_prime(p: usize) -> Result<()> {
    if matches!(p, 2 | 3 | 5 | 7) {
        Ok(())
    } else {
        Err(Error::Precondition(format!("p = {p} must be a prime at most 7")))
    }
}

/// `SL(2, p)` for a prime `p ≤ 7`, elements in lexicographic order of `(a, b, c, d)`.
pub fn sl2(p: usize) -> Result<FiniteGroup> {
    check_prime(p)?;
    let mut elems = Vec::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    if (a * d + p * p - b * c) % p == 1 {
                        elems.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    let index: HashMap<[usize; 4], usize> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let id = index[&[1, 0, 0, 1]];
    FiniteGroup::from_fn(elems.len(), id, |x, y| {
        let [a, b, c, d] = elems[x];
        let [e, f, g, h] = elems[y];
        index[&[(a * e + b * g) % p, (a * f + b * h) % p, (c * e + d * g) % p, (c * f + d * h) % p]]
    })
}

/// The central extension `Z(SL(2, p)) ↪ SL(2, p) ↠ PSL(2, p)`.
pub fn sl2_cover(p: usize) -> Result<Extension> {
    let s = sl2(p)?;
    Extension::from_normal(&s, &center(&s))
}

pub fn psl2(p: usize) -> Result<FiniteGroup> {
    let s = sl2(p)?;
    Ok(quotient_group(&s, &center(&s))?.0)
}

/// `Z/m ↪ X × Z/m ↠ X`.
pub fn product_extension(x: &FiniteGroup, m: usize) -> Result<Extension> {
    let z = FiniteGroup::cyclic(m);
    let e = x.product(&z);
    let iota = GroupHom::new(&z, &e, (0..m).map(|a| x.identity() * m + a).collect())?;
    let pi = GroupHom::new(&e, x, (0..e.order()).map(|i| i / m).collect())?;
    Extension::new(iota, pi)
}

/// Fibre product of two extensions of the same `X`, with kernel `A_1 × A_2`.
pub fn pullback(e1: &Extension, e2: &Extension) -> Result<Extension> {
    if e1.x != e2.x {
        return Err(Error::Precondition("pullback needs extensions of the same group".into()));
    }
    let pairs: Vec<(usize, usize)> = e1
        .e
        .elements()
        .flat_map(|u| e2.e.elements().filter(move |&v| e1.pi.apply(u) == e2.pi.apply(v)).map(move |v| (u, v)))
        .collect();
    let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let id = index[&(e1.e.identity(), e2.e.identity())];
    let p = FiniteGroup::from_fn(pairs.len(), id, |i, j| {
        let (a, b) = pairs[i];
        let (c, d) = pairs[j];
        index[&(e1.e.mul(a, c), e2.e.mul(b, d))]
    })?;
    let a = e1.a.product(&e2.a);
    let n2 = e2.a.order();
    let iota_map = (0..a.order()).map(|i| index[&(e1.iota.apply(i / n2), e2.iota.apply(i % n2))]).collect();
    let iota = GroupHom::new(&a, &p, iota_map)?;
    let pi = GroupHom::new(&p, &e1.x, pairs.iter().map(|&(u, _)| e1.pi.apply(u)).collect())?;
    Extension::new(iota, pi)
}

/// A named central extension used to test weak initiality.
#[derive(Clone, Debug)]
pub struct Probe {
    pub name: String,
    pub ext: Extension,
}

/// `X × Z/2`, `X × Z/3`, the extension itself and its pullback against `X × Z/2`.
pub fn standard_probes(e: &Extension) -> Result<Vec<Probe>> {
    let x2 = product_extension(&e.x, 2)?;
    let x3 = product_extension(&e.x, 3)?;
    Ok(vec![
        Probe { name: "X×Z/2".into(), ext: x2.clone() },
        Probe { name: "X×Z/3".into(), ext: x3 },
        Probe { name: "self".into(), ext: e.clone() },
        Probe { name: "pullback(self, X×Z/2)".into(), ext: pullback(e, &x2)? },
    ])
}

#[derive(Clone, Debug)]
pub struct ClauseCheck {
    pub clause: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct ProbeRecord {
    pub name: String,
    pub morphisms: usize,
}

/// Verdict on `A ↪ U ↠ X` being a universal central extension, relative to
/// the probes.
#[derive(Clone, Debug)]
pub struct UCECertificate {
    pub clauses: Vec<ClauseCheck>,
    pub probes: Vec<ProbeRecord>,
    /// Hypothesis the criterion relies on but that cannot be checked here.
    pub assumed: &'static str,
}

impl UCECertificate {
    pub fn valid(&self) -> bool {
        self.clauses.iter().all(|c| c.passed)
    }

    pub fn failing_clauses(&self) -> Vec<usize> {
        self.clauses.iter().filter(|c| !c.passed).map(|c| c.clause).collect()
    }
}

pub const UCE_HYPOTHESIS: &str = "groups satisfy condition (UCE), so weakly universal + perfect ⇒ universal";

/// Morphisms of extensions `e → f` over the identity of `X`.
pub fn morphisms_over_base(e: &Extension, f: &Extension) -> Result<Vec<GroupHom>> {
    if e.x != f.x {
        return Err(Error::Precondition("probe is not an extension of the same group".into()));
    }
    let allowed = |u: usize, v: usize| f.pi.apply(v) == e.pi.apply(u);
    Ok(hom_enumerate(&e.e, &f.e, &HomConstraints { fixed: vec![], allowed: Some(&allowed) }))
}

pub fn verify_uce(e: &Extension, probes: &[Probe]) -> Result<UCECertificate> {
    let mut clauses = Vec::new();
    let x_perfect = e.x.is_perfect();
    clauses.push(ClauseCheck { clause: 1, name: "base perfect", passed: x_perfect, detail: format!("|X| = {}", e.x.order()) });
    let central = is_central_extension(e);
    clauses.push(ClauseCheck { clause: 2, name: "central", passed: central, detail: String::new() });
    let u_perfect = e.e.is_perfect();
    clauses.push(ClauseCheck { clause: 3, name: "middle perfect", passed: u_perfect, detail: format!("|U| = {}", e.e.order()) });
    let schur = hom_counting_h2(&e.x)?;
    let (kernel_ok, detail) = if e.a.is_abelian() {
        let a = abelian_presentation(&e.a).0;
        (a.same_invariants(&schur), format!("A = {}, H_2(X) = {}", a.invariant_string(), schur.invariant_string()))
    } else {
        (false, "kernel is not abelian".to_string())
    };
    clauses.push(ClauseCheck { clause: 4, name: "kernel is H_2(X)", passed: kernel_ok, detail });
    let mut records = Vec::new();
    for p in probes {
        records.push(ProbeRecord { name: p.name.clone(), morphisms: morphisms_over_base(e, &p.ext)?.len() });
    }
    let bad: Vec<String> = records.iter().filter(|r| r.morphisms != 1).map(|r| format!("{}: {}", r.name, r.morphisms)).collect();
    clauses.push(ClauseCheck {
        clause: 5,
        name: "unique morphism to each probe",
        passed: bad.is_empty(),
        detail: if bad.is_empty() { format!("{} probes", records.len()) } else { bad.join(", ") },
    });
    Ok(UCECertificate { clauses, probes: records, assumed: UCE_HYPOTHESIS })
}

/// One congruence class of central extensions with a representative.
#[derive(Clone, Debug)]
pub struct ExtensionClass {
    /// Normalized cocycle on pairs of non-identity elements, row-major.
    pub cocycle: Vec<usize>,
    pub extension: Extension,
}

#[derive(Clone, Debug)]
pub struct CentralExtensions {
    pub cocycles: usize,
    pub coboundaries: usize,
    pub classes: Vec<ExtensionClass>,
}

impl CentralExtensions {
    pub fn count(&self) -> usize {
        self.classes.len()
    }
}

const COCYCLE_BUDGET: f64 = (1u64 << 26) as f64;

/// All central extensions `A ↪ E ↠ X` up to congruence, by enumerating
/// normalized 2-cocycles and dividing out coboundaries.
pub fn enumerate_central_extensions(x: &FiniteGroup, a: &FiniteGroup) -> Result<CentralExtensions> {
    if !a.is_abelian() {
        return Err(Error::Precondition("the kernel must be abelian".into()));
    }
    let nx = x.order();
    let na = a.order();
    let letters: Vec<usize> = x.elements().filter(|&g| g != x.identity()).collect();
    let b = letters.len();
    if (na as f64).powi((b * b) as i32) > COCYCLE_BUDGET {
        return Err(Error::Budget(format!("{na}^{} normalized cochains exceed 2^26", b * b)));
    }
    let mut pos = vec![usize::MAX; nx];
    for (i, &g) in letters.iter().enumerate() {
        pos[g] = i;
    }
    let pair = |g: usize, h: usize| -> Option<usize> {
        (pos[g] != usize::MAX && pos[h] != usize::MAX).then(|| pos[g] * b + pos[h])
    };
    // f(y,z) + f(x,yz) = f(xy,z) + f(x,y); each triple is checked once its last pair is set
    let mut by_last: Vec<Vec<[Option<usize>; 4]>> = vec![Vec::new(); b * b];
    for &g in &letters {
        for &h in &letters {
            for &k in &letters {
                let t = [pair(h, k), pair(g, x.mul(h, k)), pair(x.mul(g, h), k), pair(g, h)];
                let last = t.iter().flatten().max().copied().unwrap();
                by_last[last].push(t);
            }
        }
    }
    let holds = |f: &[usize], t: &[Option<usize>; 4]| {
        let v = |o: Option<usize>| o.map_or(a.identity(), |i| f[i]);
        a.mul(v(t[0]), v(t[1])) == a.mul(v(t[2]), v(t[3]))
    };
    let cells = b * b;
    let cocycles: Vec<Vec<usize>> = if cells == 0 {
        vec![Vec::new()]
    } else {
        let mut out: Vec<Vec<usize>> = (0..na)
            .into_par_iter()
            .flat_map_iter(|v0| {
                let mut found = Vec::new();
                let mut f = vec![v0];
                fn go(
                    f: &mut Vec<usize>,
                    cells: usize,
                    na: usize,
                    by_last: &[Vec<[Option<usize>; 4]>],
                    holds: &dyn Fn(&[usize], &[Option<usize>; 4]) -> bool,
                    found: &mut Vec<Vec<usize>>,
                ) {
                    let i = f.len() - 1;
                    if !by_last[i].iter().all(|t| holds(f, t)) {
                        return;
                    }
                    if f.len() == cells {
                        found.push(f.clone());
                        return;
                    }
                    for v in 0..na {
                        f.push(v);
                        go(f, cells, na, by_last, holds, found);
                        f.pop();
                    }
                }
                go(&mut f, cells, na, &by_last, &holds, &mut found);
                found
            })
            .collect();
        out.sort();
        out
    };
    // δh(g, h) = h(g) + h(h) − h(gh)
    let mut coboundaries: BTreeSet<Vec<usize>> = BTreeSet::new();
    let total = na.pow(b as u32);
    for code in 0..total {
        let mut hv = vec![a.identity(); nx];
        let mut c = code;
        for &g in &letters {
            hv[g] = c % na;
            c /= na;
        }
        let mut f = Vec::with_capacity(cells);
        for &g in &letters {
            for &h in &letters {
                f.push(a.mul(a.mul(hv[g], hv[h]), a.inv(hv[x.mul(g, h)])));
            }
        }
        coboundaries.insert(f);
    }
    let mut class_of: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut reps: Vec<Vec<usize>> = Vec::new();
    for f in &cocycles {
        if class_of.contains_key(f) {
            continue;
        }
        let id = reps.len();
        for c in &coboundaries {
            let g: Vec<usize> = f.iter().zip(c).map(|(&u, &v)| a.mul(u, v)).collect();
            class_of.insert(g, id);
        }
        reps.push(f.clone());
    }
    if reps.len() * coboundaries.len() != cocycles.len() {
        return Err(Error::Consistency("coboundary orbits do not partition the cocycles".into()));
    }
    let classes = reps
        .into_iter()
        .map(|f| {
            let extension = cocycle_extension(x, a, &letters, &pos, &f)?;
            Ok(ExtensionClass { cocycle: f, extension })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CentralExtensions { cocycles: cocycles.len(), coboundaries: coboundaries.len(), classes })
}

fn cocycle_extension(x: &FiniteGroup, a: &FiniteGroup, letters: &[usize], pos: &[usize], f: &[usize]) -> Result<Extension> {
    let na = a.order();
    let b = letters.len();
    let fv = |g: usize, h: usize| {
        if pos[g] == usize::MAX || pos[h] == usize::MAX {
            a.identity()
        } else {
            f[pos[g] * b + pos[h]]
        }
    };
    // (g, s)(h, t) = (gh, s + t + f(g, h)), element g·|A| + s
    let e = FiniteGroup::from_fn(x.order() * na, x.identity() * na + a.identity(), |i, j| {
        let (g, s) = (i / na, i % na);
        let (h, t) = (j / na, j % na);
        x.mul(g, h) * na + a.mul(a.mul(s, t), fv(g, h))
    })?;
    let iota = GroupHom::new(a, &e, (0..na).map(|s| x.identity() * na + s).collect())?;
    let pi = GroupHom::new(&e, x, (0..e.order()).map(|i| i / na).collect())?;
    Extension::new(iota, pi)
}

/// Result of expanding every `t ∈ F(T(X))` into a natural transformation.
#[derive(Clone, Debug)]
pub struct ReflectorYonedaReport {
    pub ft: FgAbGroup,
    pub classes: usize,
    /// `f̄ ∘ η = f` for every probed `f: X → M`.
    pub factorisation_ok: bool,
    /// Evaluating at the unit returns `t`, and components match `F(f̄)(t)`.
    pub roundtrip_ok: bool,
    pub naturality_ok: bool,
}

impl ReflectorYonedaReport {
    pub fn passed(&self) -> bool {
        self.factorisation_ok && self.roundtrip_ok && self.naturality_ok
    }
}

/// `F(T(X)) ≅ Nat(Hom(X, −), F)` on exponent-`k` cyclic probes `Z/d`.
pub fn reflector_yoneda_roundtrip(x: &FiniteGroup, k: u64, f: &FunctorSpec, probe_orders: &[u64]) -> Result<ReflectorYonedaReport> {
    if probe_orders.iter().any(|&d| d == 0 || (k > 0 && k % d != 0)) {
        return Err(Error::Precondition(format!("probes must be Z/d with d dividing {k}")));
    }
    let ab = abelianisation(x);
    let (tx, unit): (FgAbGroup, Vec<AbElement>) = if k == 0 {
        (ab.group.clone(), ab.unit.clone())
    } else {
        let zk = FgAbGroup::cyclic(k as i64);
        let t = tensor(&ab.group, &zk);
        let one = zk.generator(0);
        let u = ab.unit.iter().map(|e| tensor_element(&t, e, &one)).collect();
        (t, u)
    };
    let gen_src: Vec<usize> = tx
        .generators()
        .iter()
        .map(|g| x.elements().find(|&e| &unit[e] == g).ok_or_else(|| Error::Consistency("T(X) generator not hit by the unit".into())))
        .collect::<Result<_>>()?;
    let ft = f.obj(&tx);
    let elems = ft.enumerate();
    let id = AbMorphism::identity(&tx);

    let mut factorisation_ok = true;
    let mut roundtrip_ok = true;
    let mut naturality_ok = true;
    // (d, f̄) for every hom X → Z/d
    let mut probes: Vec<(u64, FgAbGroup, AbMorphism)> = Vec::new();
    for &d in probe_orders {
        let m = FgAbGroup::cyclic(d as i64);
        for h in hom_enumerate(x, &FiniteGroup::cyclic(d as usize), &HomConstraints::default()) {
            let images: Vec<AbElement> = gen_src.iter().map(|&e| m.element_i64(&[h.apply(e) as i64])).collect();
            let bar = AbMorphism::from_images(&tx, &m, &images)?;
            factorisation_ok &= x.elements().all(|e| bar.apply(&unit[e]) == m.element_i64(&[h.apply(e) as i64]));
            probes.push((d, m.clone(), bar));
        }
    }
    for t in &elems {
        let w = yoneda_expand(t, f, &tx)?;
        roundtrip_ok &= &w.component(&tx, &id)? == t;
        for (d, m, bar) in &probes {
            let c = w.component(m, bar)?;
            roundtrip_ok &= c == f.mor(bar).apply(t);
            for &d2 in probe_orders {
                let m2 = FgAbGroup::cyclic(d2 as i64);
                for s in 0..d2 as i64 {
                    if (s * *d as i64) % d2 as i64 != 0 {
                        continue;
                    }
                    let g = int_map(m, &m2, &[&[s]])?;
                    let lhs = f.mor(&g).apply(&c);
                    let rhs = w.component(&m2, &g.compose(bar)?)?;
                    naturality_ok &= lhs == rhs;
                }
            }
        }
    }
    Ok(ReflectorYonedaReport { ft: from_cyclic_orders(ft.invariants().0, &ft.invariants().1), classes: elems.len(), factorisation_ok, roundtrip_ok, naturality_ok })
}
