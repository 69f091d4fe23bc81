use super::*;

fn a5() -> FiniteGroup {
    FiniteGroup::from_permutations(5, &[vec![1, 2, 3, 4, 0], vec![1, 2, 0, 3, 4]]).unwrap()
}

// Closure by repeated products, independent of `subgroup_generated`.
fn brute_closure(g: &FiniteGroup, seed: &[usize]) -> Vec<usize> {
    let mut s: std::collections::BTreeSet<usize> = seed.iter().copied().collect();
    s.insert(g.identity());
    loop {
        let v: Vec<usize> = s.iter().copied().collect();
        let before = s.len();
        for &a in &v {
            for &b in &v {
                s.insert(g.mul(a, b));
            }
        }
        if s.len() == before {
            return v;
        }
    }
}

#[test]
fn constructors() {
    assert_eq!(FiniteGroup::from_cayley(&[vec![0]], 0).unwrap().order(), 1);
    assert_eq!(a5().order(), 60);
    assert_eq!(FiniteGroup::alternating(5).order(), 60);
    assert_eq!(FiniteGroup::symmetric(4).order(), 24);
    assert_eq!(FiniteGroup::dihedral(4).order(), 8);
    assert!(!FiniteGroup::quaternion().is_abelian());
    // a Latin square that is not associative
    let t = vec![vec![0, 1, 2, 3, 4], vec![1, 0, 3, 4, 2], vec![2, 4, 0, 1, 3], vec![3, 2, 4, 0, 1], vec![4, 3, 1, 2, 0]];
    let e = FiniteGroup::from_cayley(&t, 0).unwrap_err();
    assert!(matches!(e, Error::InvalidGroup(ref m) if m.contains("associativity")));
    assert!(FiniteGroup::from_cayley(&[vec![0, 1], vec![1, 1]], 0).is_err());
    assert!(FiniteGroup::from_permutations(3, &[vec![0, 0, 1]]).is_err());
    assert!(FiniteGroup::semidirect_cyclic(7, 3, 3).is_err());
    assert_eq!(FiniteGroup::semidirect_cyclic(7, 3, 2).unwrap().order(), 21);
}

#[test]
fn subgroups() {
    let q8 = FiniteGroup::quaternion();
    let brute_center = q8.elements().filter(|&z| q8.elements().all(|x| q8.mul(z, x) == q8.mul(x, z))).count();
    assert_eq!(center(&q8).order(), brute_center);
    assert_eq!(brute_center, 2);
    let z6 = FiniteGroup::cyclic(6);
    assert_eq!(subgroup_generated(&z6, &[2]).order(), 3);
    let s3 = FiniteGroup::symmetric(3);
    let t = s3.elements().find(|&x| s3.element_order(x) == 2).unwrap();
    assert_eq!(normal_closure(&s3, &[t]).order(), 6);
    assert!(!subgroup_generated(&s3, &[t]).is_normal());
    for seed in [vec![t], vec![1, 2]] {
        assert_eq!(subgroup_generated(&s3, &seed).elements(), brute_closure(&s3, &seed).as_slice());
    }
}

#[test]
fn commutators() {
    let q8 = FiniteGroup::quaternion();
    let w = Subgroup::whole(&q8);
    let c = higgins_commutator(&q8, &w, &w);
    let comms: Vec<usize> = q8.elements().flat_map(|a| q8.elements().map(move |b| (a, b))).map(|(a, b)| q8.commutator(a, b)).collect();
    assert_eq!(c.elements(), brute_closure(&q8, &comms).as_slice());
    assert_eq!(c.elements(), center(&q8).elements());
    assert!(higgins_commutator(&q8, &w, &Subgroup::trivial(&q8)).is_trivial());
    let a = a5();
    assert_eq!(commutator_subgroup(&a).order(), 60);
    assert!(a.is_perfect());
    // monotone and symmetric on S4
    let s4 = FiniteGroup::symmetric(4);
    let subs: Vec<Subgroup> = [vec![], vec![1], vec![1, 2], vec![3, 5], vec![7]].iter().map(|g| subgroup_generated(&s4, g)).collect();
    for k in &subs {
        for l in &subs {
            let kl = higgins_commutator(&s4, k, l);
            assert_eq!(kl.elements(), higgins_commutator(&s4, l, k).elements());
            assert!(kl.is_subset_of(&k.join(l)));
            let bigger = k.join(&subs[1]);
            assert!(kl.is_subset_of(&higgins_commutator(&s4, &bigger, l)));
        }
    }
}

#[test]
fn quotients_and_abelianisation() {
    let q8 = FiniteGroup::quaternion();
    let (k, p) = quotient_group(&q8, &center(&q8)).unwrap();
    assert_eq!(k.order(), 4);
    assert!(k.elements().all(|x| k.mul(x, x) == k.identity()));
    assert!(p.is_surjective());
    let s3 = FiniteGroup::symmetric(3);
    let a3 = commutator_subgroup(&s3);
    assert_eq!(a3.order(), 3);
    assert_eq!(quotient_group(&s3, &a3).unwrap().0.order(), 2);
    assert_eq!(quotient_group(&s3, &Subgroup::whole(&s3)).unwrap().0.order(), 1);
    let t = s3.elements().find(|&x| s3.element_order(x) == 2).unwrap();
    assert!(quotient_group(&s3, &subgroup_generated(&s3, &[t])).is_err());

    assert_eq!(abelianisation(&s3).group.invariant_string(), "Z/2");
    assert_eq!(abelianisation(&FiniteGroup::cyclic(6)).group.invariant_string(), "Z/6");
    assert!(abelianisation(&a5()).group.is_trivial());
    assert_eq!(abelianisation(&q8).group.invariant_string(), "Z/2 ⊕ Z/2");
    // the unit is a homomorphism onto an abelian group that kills exactly [G, G]
    let g = FiniteGroup::dihedral(6);
    let ab = abelianisation(&g);
    let c = commutator_subgroup(&g);
    for x in g.elements() {
        assert_eq!(ab.unit[x].is_zero(), c.contains(x));
        for y in g.elements() {
            assert_eq!(ab.unit[g.mul(x, y)], ab.unit[x].add(&ab.unit[y]));
        }
    }
}

#[test]
fn abelianisation_is_functorial_and_preserves_products() {
    let g = FiniteGroup::symmetric(3);
    let h = FiniteGroup::dihedral(4);
    let gh = g.product(&h);
    let sum = crate::fgab::direct_sum(&[abelianisation(&g).group, abelianisation(&h).group]);
    assert!(crate::fgab::iso_witness(&abelianisation(&gh).group, &sum.group).is_some());
    let (ag, ah) = (abelianisation(&g), abelianisation(&h));
    for f in hom_enumerate(&g, &h, &HomConstraints::default()) {
        let m = abelianisation_map(&f, &ag, &ah).unwrap();
        for x in g.elements() {
            assert_eq!(m.apply(&ag.unit[x]), ah.unit[f.apply(x)]);
        }
    }
}

#[test]
fn homomorphism_counts() {
    let (z2, z3) = (FiniteGroup::cyclic(2), FiniteGroup::cyclic(3));
    let s3 = FiniteGroup::symmetric(3);
    assert_eq!(hom_enumerate(&z2, &z3, &HomConstraints::default()).len(), 1);
    let involutions = s3.elements().filter(|&x| s3.mul(x, x) == s3.identity()).count();
    assert_eq!(hom_enumerate(&z2, &s3, &HomConstraints::default()).len(), involutions);
    assert_eq!(involutions, 4);
    assert_eq!(hom_enumerate(&a5(), &FiniteGroup::cyclic(5), &HomConstraints::default()).len(), 1);
    // Hom(Z/2 × Z/4, D4) = commuting pairs (a, b) with a² = b⁴ = 1
    let d4 = FiniteGroup::dihedral(4);
    let src = FiniteGroup::cyclic(2).product(&FiniteGroup::cyclic(4));
    let pairs = d4
        .elements()
        .flat_map(|a| d4.elements().map(move |b| (a, b)))
        .filter(|&(a, b)| d4.element_order(a) <= 2 && 4 % d4.element_order(b) == 0 && d4.mul(a, b) == d4.mul(b, a))
        .count();
    let homs = hom_enumerate(&src, &d4, &HomConstraints::default());
    assert_eq!(homs.len(), pairs);
    let maps: Vec<&[usize]> = homs.iter().map(|h| h.map()).collect();
    assert!(maps.windows(2).all(|w| w[0] < w[1]));
    // fixing a value
    let c = HomConstraints { fixed: vec![(1, 1)], allowed: None };
    assert_eq!(hom_enumerate(&FiniteGroup::cyclic(4), &FiniteGroup::cyclic(4), &c).len(), 1);
}

#[test]
fn central_extensions() {
    let q8 = FiniteGroup::quaternion();
    let e = Extension::from_normal(&q8, &center(&q8)).unwrap();
    assert!(is_central_extension(&e));
    let s3 = FiniteGroup::symmetric(3);
    let e = Extension::from_normal(&s3, &commutator_subgroup(&s3)).unwrap();
    assert!(!is_central_extension(&e));
    let e = Extension::split(&FiniteGroup::cyclic(3), &s3);
    assert!(is_central_extension(&e));
    assert_eq!(e.a.order() * e.x.order(), e.e.order());
}

#[test]
fn double_extensions() {
    let v = FiniteGroup::klein_four().product(&FiniteGroup::cyclic(2));
    let n1 = subgroup_generated(&v, &[1]);
    let n2 = subgroup_generated(&v, &[2]);
    assert!(double_is_central(&DoubleExtension::from_normals(&v, &n1, &n2).unwrap()));
    let q8 = FiniteGroup::quaternion();
    let z = center(&q8);
    assert!(double_is_central(&DoubleExtension::from_normals(&q8, &z, &z).unwrap()));
    let s3 = FiniteGroup::symmetric(3);
    let a3 = commutator_subgroup(&s3);
    let d = DoubleExtension::from_normals(&s3, &a3, &a3).unwrap();
    // brute force: [A3, A3] = 1 but [A3, S3] = A3
    let comm = |k: &Subgroup, l: &Subgroup| {
        k.elements().iter().flat_map(|&a| l.elements().iter().map(move |&b| (a, b))).any(|(a, b)| s3.commutator(a, b) != s3.identity())
    };
    assert!(!comm(&a3, &a3));
    assert!(comm(&a3, &Subgroup::whole(&s3)));
    assert!(!double_is_central(&d));
}

#[test]
fn congruence() {
    let z2 = FiniteGroup::cyclic(2);
    let z4 = FiniteGroup::cyclic(4);
    let sub = subgroup_generated(&z4, &[2]);
    let (h, incl) = sub.as_group();
    let (_, q) = quotient_group(&z4, &sub).unwrap();
    // relabel so both ends are the same Z/2
    let from_z2 = GroupHom::new(&z2, &h, vec![0, 1]).unwrap();
    let iota = incl.after(&from_z2);
    let pi = GroupHom::new(q.target(), &z2, vec![0, 1]).unwrap().after(&q);
    let cyc = AnyExtension::Single(Extension::new(iota, pi).unwrap());
    let split = AnyExtension::Single(Extension::split(&z2, &z2));
    assert!(matches!(extensions_congruent(&cyc, &cyc, &[], 2).unwrap(), Congruence::Yes(_)));
    assert!(matches!(extensions_congruent(&cyc, &split, &[], 2).unwrap(), Congruence::No));
    assert!(matches!(extensions_congruent(&split, &cyc, &[], 2).unwrap(), Congruence::No));

    // S3 = Z/3 ⋊ Z/2 built twice with different labels
    let s3a = FiniteGroup::semidirect_cyclic(3, 2, 2).unwrap();
    let s3b = FiniteGroup::dihedral(3);
    let z3 = FiniteGroup::cyclic(3);
    let mk = |g: &FiniteGroup| {
        let n = commutator_subgroup(g);
        let (ng, incl) = n.as_group();
        let (qg, proj) = quotient_group(g, &n).unwrap();
        let a = hom_enumerate(&z3, &ng, &HomConstraints::default()).into_iter().find(|f| f.is_injective()).unwrap();
        let x = GroupHom::new(&qg, &z2, vec![0, 1]).unwrap();
        Extension::new(incl.after(&a), x.after(&proj)).unwrap()
    };
    let (ea, eb) = (AnyExtension::Single(mk(&s3a)), AnyExtension::Single(mk(&s3b)));
    match extensions_congruent(&ea, &eb, &[], 2).unwrap() {
        Congruence::Yes(w) => assert!(w[0].middle.is_injective()),
        other => panic!("{other:?}"),
    }
    let mismatch = AnyExtension::Single(Extension::split(&z3, &z3));
    assert!(extensions_congruent(&ea, &mismatch, &[], 2).is_err());
}

#[test]
fn double_congruence() {
    let v = FiniteGroup::klein_four();
    let n1 = subgroup_generated(&v, &[1]);
    let n2 = subgroup_generated(&v, &[2]);
    let d = AnyExtension::Double(DoubleExtension::from_normals(&v, &n1, &n2).unwrap());
    assert!(matches!(extensions_congruent(&d, &d, &[], 2).unwrap(), Congruence::Yes(_)));
}
