//! Acceptance suite: one line per criterion with its verdict and timing.
//!
//! Runs as a plain binary (`harness = false`). Pass criterion numbers as
//! arguments to run a subset.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use homcat::chains::{
    connecting_morphism, homology_coker, homology_ker, interchange_iso_pair, ladder_check, long_exact_sequence, ChainComplex,
    ChainMap, ComplexSES,
};
use homcat::derived::{abelian_uct_check, derived_ladder, homological_yoneda, horseshoe, scalar_enrichment_check, FunctorSpec};
use homcat::fgab::{cokernel, direct_sum, kernel, smith_normal_form, AbElement, AbMorphism, FgAbGroup, IntMatrix};
use homcat::grp::{
    abelianisation, abelianisation_map, center, commutator_subgroup, normal_closure, Extension, FiniteGroup, GroupHom, Subgroup,
};
use homcat::grphom::{bar_selfcheck, derived_reflector, group_cohomology, group_homology, stallings_tail, Coeff};
use homcat::uce::{acyclicity_class, enumerate_central_extensions, hom_counting_h2, sl2_cover, standard_probes, uct_pairing, verify_uce};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn small_probes() -> Vec<FgAbGroup> {
    vec![FgAbGroup::free(1), FgAbGroup::cyclic(2), FgAbGroup::cyclic(3), FgAbGroup::cyclic(4)]
}

// 1 ---------------------------------------------------------------------------

fn snf_algebra() -> Outcome {
    let mut rng = rng(1);
    for case in 0..1000 {
        let (r, c) = (rng.gen_range(1..=30), rng.gen_range(1..=30));
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-9..=9)).collect()).collect();
        let a = IntMatrix::from_rows(&rows, c).unwrap();
        let s = smith_normal_form(&a);
        ensure!(s.u.mul(&a).mul(&s.v) == s.s, "case {case}: U·A·V ≠ S");
        ensure!(s.u.determinant().abs().is_one() && s.v.determinant().abs().is_one(), "case {case}: not unimodular");
        for i in 0..r {
            for j in 0..c {
                let want = if i == j { s.divisors[i].clone() } else { BigInt::zero() };
                ensure!(*s.s.get(i, j) == want, "case {case}: S is not the divisor diagonal");
            }
        }
        let d = &s.divisors;
        ensure!(d.iter().all(|x| !x.is_negative()), "case {case}: negative divisor");
        for w in d.windows(2) {
            let chain = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            ensure!(chain, "case {case}: divisor chain broken at {} | {}", w[0], w[1]);
        }
        // oracles: d_1 is the gcd of the entries, the product is |det| when square
        let g = rows.iter().flatten().fold(BigInt::zero(), |g, &x| g.gcd(&BigInt::from(x)));
        ensure!(d[0] == g, "case {case}: d_1 = {} but gcd = {g}", d[0]);
        if r == c {
            let prod: BigInt = d.iter().product();
            ensure!(prod == a.determinant().abs(), "case {case}: divisor product ≠ |det|");
        }
    }
    Ok("1000 matrices, 0 failures".into())
}

// 2 ---------------------------------------------------------------------------

fn homology_equivalence() -> Outcome {
    let mut rng = rng(2);
    let mut degrees = 0;
    for case in 0..500 {
        let c = random_complex(&mut rng, 5, 3);
        for n in c.lo()..=c.hi() {
            let hk = ok(homology_ker(&c, n), "homology_ker")?.group;
            let hc = ok(homology_coker(&c, n), "homology_coker")?.group;
            ensure!(hk.same_invariants(&hc), "case {case}, n = {n}: {} vs {}", hk.invariant_string(), hc.invariant_string());
            let (f, g) = ok(interchange_iso_pair(&c, n), "interchange")?;
            let gf = ok(g.compose(&f), "compose")?;
            let fg = ok(f.compose(&g), "compose")?;
            ensure!(gf.is_identity() && fg.is_identity(), "case {case}, n = {n}: interchange is not two-sided");
            degrees += 1;
        }
    }
    Ok(format!("500 complexes, {degrees} degrees, 0 failures"))
}

// 3 ---------------------------------------------------------------------------

/// `∂ = H(f)` for the cone sequence `B ↪ Cone(f) ↠ A[−1]`.
fn cone_regression(f: &ChainMap, ses: &ComplexSES) -> Result<(), String> {
    for n in ses.lo()..ses.hi() {
        let del = ok(connecting_morphism(ses, n), "connecting")?;
        let p = ok(ses.padded(n - 1, n + 2), "padded")?;
        let hc = ok(homology_ker(&p.c, n + 1), "H(C)")?;
        let hb = ok(homology_ker(&p.a, n), "H(A)")?;
        for g in hc.group.generators() {
            let x = hc.coker_proj.preimage(&hc.incl.apply(&g)).ok_or("lift")?;
            let xa = f.source().obj(n).element(x.coords().to_vec());
            let lhs = hb.incl.apply(&del.apply(&g));
            let rhs = hb.coker_proj.apply(&f.at(n).apply(&xa));
            ensure!(lhs == rhs, "cone regression fails in degree {n}");
        }
    }
    Ok(())
}

fn les_exactness() -> Outcome {
    let mut rng = rng(3);
    let mut nodes = 0;
    for case in 0..300 {
        let ses = match case % 3 {
            0 => {
                let f = random_chain_map(&mut rng);
                let ses = ok(ComplexSES::cone(&f), "cone")?;
                cone_regression(&f, &ses).map_err(|e| format!("case {case}: {e}"))?;
                ses
            }
            1 => {
                let a = random_complex(&mut rng, 3, 2);
                let c = random_complex(&mut rng, 3, 2);
                ok(ComplexSES::split(&a, &c), "split")?
            }
            _ => {
                // A = Ker g ↪ X ↠ Coker h = Y
                let x = random_abgroup(&mut rng, 3);
                let w = random_abgroup(&mut rng, 2);
                let h = random_morphism(&mut rng, &w, &x);
                let (_, g) = cokernel(&h);
                let (_, f) = kernel(&g);
                ok(horseshoe(&f, &g), "horseshoe")?.0
            }
        };
        let les = ok(long_exact_sequence(&ses), "les")?;
        ensure!(les.is_exact(), "case {case}: not exact at {:?}", les.exact.iter().position(|e| !e));
        nodes += les.nodes.len();
    }
    Ok(format!("300 sequences (100 cones, 100 splits, 100 horseshoes), {nodes} nodes exact, cone ∂ = H(f)"))
}

// 4 ---------------------------------------------------------------------------

fn sample(g: &FgAbGroup, rng: &mut TestRng) -> Vec<AbElement> {
    let small = g.order().is_some_and(|o| o <= BigInt::from(256));
    if small {
        return g.enumerate();
    }
    let mut v = g.generators();
    for _ in 0..4 {
        let c: Vec<i64> = (0..g.generator_count()).map(|_| rng.gen_range(-4..=4)).collect();
        v.push(g.element_i64(&c));
    }
    v
}

fn yoneda_case(rng: &mut TestRng) -> Result<bool, String> {
    let c = random_complex(rng, 3, 2);
    let k = rng.gen_range(0..=6);
    let t = FunctorSpec::tensor_cyclic(k);
    let n = rng.gen_range(c.lo()..=c.hi());
    let y = ok(homological_yoneda(&c, &t, n), "yoneda")?;
    let h = y.homology().group.clone();
    let hs = sample(&h, rng);
    for e in &hs {
        ensure!(ok(y.backward(&y.forward(e)), "backward")? == *e, "backward ∘ forward ≠ id");
    }
    let w = y.witness_group().clone();
    for x in sample(&w, rng) {
        ensure!(y.forward_map().apply(&y.backward_map().apply(&x)) == x, "forward ∘ backward ≠ id");
    }
    for a in &hs {
        let b = pick(rng, &hs);
        let sum = y.forward(&a.add(b)).element().clone();
        ensure!(sum == y.forward(a).element().add(y.forward(b).element()), "forward is not additive");
    }
    let cp = c.padded(n - 1, n + 1);
    let (q, _) = y.quotient();
    let mut probes = small_probes();
    probes.push(random_finite_abgroup(rng));
    for a in &probes {
        let ta = t.obj(a);
        for e in h.generators() {
            let wit = y.forward(&e);
            // coboundaries ψ ∘ d_n have zero component
            let psi = random_morphism(rng, &cp.obj(n - 1), a);
            let cob = ok(psi.compose(&cp.d(n)), "compose")?;
            ensure!(ok(wit.component_in(a, &ta, &cob), "component")?.is_zero(), "a coboundary has a nonzero component");
            // naturality along α: A → A'
            let phi = y.cocycle_from_quotient(&random_morphism(rng, q, a));
            let a2 = pick(rng, &probes).clone();
            let ta2 = t.obj(&a2);
            let alpha = random_morphism(rng, a, &a2);
            let lhs = ok(wit.component_in(&a2, &ta2, &ok(alpha.compose(&phi), "compose")?), "component")?;
            let rhs = t.mor_between(&alpha, &ta, &ta2).apply(&ok(wit.component_in(a, &ta, &phi), "component")?);
            ensure!(lhs == rhs, "naturality fails");
        }
    }
    if k >= 1 {
        let ok_scalar = ok(scalar_enrichment_check(&c, &t, n, &[0, 1, -1, 2, 3], &small_probes()), "scalar")?;
        ensure!(ok_scalar, "scalar action does not commute with the bijection (k = {k})");
    }
    Ok(!h.is_trivial())
}

fn homological_yoneda_suite() -> Outcome {
    let mut rng = rng(4);
    let mut nontrivial = 0;
    for case in 0..200 {
        nontrivial += yoneda_case(&mut rng).map_err(|e| format!("case {case}: {e}"))? as usize;
    }
    Ok(format!("200 cases ({nontrivial} with H_n ≠ 0): round trips, coboundaries, naturality, additivity, Z/k scalars"))
}

// 5 ---------------------------------------------------------------------------

fn ladders() -> Outcome {
    let mut rng = rng(5);
    let mut squares = 0;
    for case in 0..100 {
        let k = rng.gen_range(0..=6);
        let t = FunctorSpec::tensor_cyclic(k);
        if case % 2 == 0 {
            let a = random_complex(&mut rng, 3, 2);
            let c = random_complex(&mut rng, 3, 2);
            let ses = ok(ComplexSES::split(&a, &c), "split")?;
            let rep = ok(ladder_check(&ses, &t, ses.lo()..=ses.hi(), &small_probes()), "ladder")?;
            ensure!(rep.passed(), "case {case}: {:?}", rep.failures);
            squares += rep.squares_checked;
        } else {
            let a = random_abgroup(&mut rng, 2);
            let c = random_abgroup(&mut rng, 2);
            let s = direct_sum(&[a, c]);
            let rep = ok(derived_ladder(&s.injections[0], &s.projections[1], &t, 0..=1, &small_probes()), "derived ladder")?;
            ensure!(rep.passed(), "case {case}: {:?}", rep.ladder.failures);
            squares += rep.ladder.squares_checked;
        }
    }
    ensure!(squares > 0, "no squares were checked");
    Ok(format!("100 split sequences (50 of complexes, 50 resolved), {squares} squares commute"))
}

// 6 ---------------------------------------------------------------------------

fn abelian_uct() -> Outcome {
    let mut rng = rng(6);
    let mut nonzero = 0;
    for case in 0..100 {
        let n = rng.gen_range(0..=2);
        let top = n + rng.gen_range(1..=2);
        let c = random_free_complex(&mut rng, n, top);
        let a = match rng.gen_range(0..4) {
            0 => FgAbGroup::free(1),
            1 => FgAbGroup::cyclic(rng.gen_range(2..=6)),
            2 => FgAbGroup::standard(1, &[rng.gen_range(2..=6)]),
            _ => random_finite_abgroup(&mut rng),
        };
        let r = ok(abelian_uct_check(&c, &a, n), "uct")?;
        ensure!(r.precondition.is_none(), "case {case}: generator broke the hypothesis: {:?}", r.precondition);
        ensure!(r.passed(), "case {case}: iso {} vanishing {}", r.iso_ok, r.vanishing_ok);
        if r.cohomology.as_ref().is_some_and(|h| !h.is_trivial()) {
            nonzero += 1;
        }
    }
    Ok(format!("100 complexes, {nonzero} with nonzero H^n"))
}

// 7 ---------------------------------------------------------------------------

/// `H_*(Z/n; Z)` from the periodic resolution: `Z ←0− Z ←n− Z ←0− Z ←n− Z`.
fn periodic_homology(n: i64, deg: i64) -> FgAbGroup {
    let z = FgAbGroup::free(1);
    let diffs = (1..=4).map(|i| AbMorphism::scalar(&z, if i % 2 == 0 { n } else { 0 })).collect();
    let c = ChainComplex::new(0, vec![z.clone(); 5], diffs).unwrap();
    homology_ker(&c, deg).unwrap().group
}

fn expect(g: &FgAbGroup, want: &str, what: &str) -> Result<(), String> {
    ensure!(g.invariant_string() == want, "{what} = {} (expected {want})", g.invariant_string());
    Ok(())
}

fn group_homology_golden() -> Outcome {
    let cat = catalogue();
    let mut count = 0;
    for (name, g) in cat.iter().filter(|(_, g)| g.order() > 1).take(20) {
        let bar = ok(group_homology(g, 1, Coeff::Z), "H_1")?;
        let ab = abelianisation(g).group;
        ensure!(bar.same_invariants(&ab), "H_1({name}) = {} but ab = {}", bar.invariant_string(), ab.invariant_string());
        count += 1;
    }
    ensure!(count == 20, "only {count} groups");
    for n in 2..=8 {
        let g = FiniteGroup::cyclic(n);
        for deg in [2usize, 3] {
            let bar = ok(group_homology(&g, deg, Coeff::Z), "H_n(Z/n)")?;
            let per = periodic_homology(n as i64, deg as i64);
            ensure!(bar.same_invariants(&per), "H_{deg}(Z/{n}): bar {} periodic {}", bar.invariant_string(), per.invariant_string());
            let want = if deg == 2 { "0".to_string() } else { format!("Z/{n}") };
            expect(&bar, &want, &format!("H_{deg}(Z/{n})"))?;
        }
    }
    // V4: |H^2(V4; Z/m)| = |Hom(H_2, Z/m)|·|Ext(V4, Z/m)| with |Ext(V4, Z/m)| = gcd(2, m)^2
    let v4 = FiniteGroup::klein_four();
    let bar = ok(group_homology(&v4, 2, Coeff::Z), "H_2(V4)")?;
    expect(&bar, "Z/2", "H_2(V4)")?;
    for (m, hom) in [(2usize, 2usize), (4, 2), (3, 1)] {
        let classes = ok(enumerate_central_extensions(&v4, &FiniteGroup::cyclic(m)), "enumerate")?.count();
        let ext = (m.gcd(&2)).pow(2);
        ensure!(classes == hom * ext, "V4 with Z/{m}: {classes} classes, expected {}", hom * ext);
    }
    for (name, g, want) in [
        ("Q8", FiniteGroup::quaternion(), "0"),
        ("S3", FiniteGroup::symmetric(3), "0"),
        ("D4", FiniteGroup::dihedral(4), "Z/2"),
        ("A4", FiniteGroup::alternating(4), "Z/2"),
    ] {
        let bar = ok(group_homology(&g, 2, Coeff::Z), "H_2")?;
        expect(&bar, want, &format!("H_2({name}) from the bar complex"))?;
        let local = ok(hom_counting_h2(&g), "hom counting")?;
        expect(&local, want, &format!("H_2({name}) from local ranks"))?;
        let sc = ok(bar_selfcheck(&g, 2), "selfcheck")?;
        ensure!(sc.passed(), "{name}: normalized and unnormalized bar complexes disagree");
        expect(&sc.unnormalized[2], want, &format!("H_2({name}) from the unnormalized bar complex"))?;
    }
    Ok("H_1 = ab on 20 groups; Z/n for n ≤ 8; V4, Q8, S3, D4, A4 agree".into())
}

// 8 ---------------------------------------------------------------------------

fn centr_vs_ext() -> Outcome {
    let mut out = Vec::new();
    for (name, x, m, want) in [
        ("(Z/2, Z/2)", FiniteGroup::cyclic(2), 2, 2usize),
        ("(Z/3, Z/3)", FiniteGroup::cyclic(3), 3, 3),
        ("(V4, Z/2)", FiniteGroup::klein_four(), 2, 8),
    ] {
        let c = ok(enumerate_central_extensions(&x, &FiniteGroup::cyclic(m)), "enumerate")?;
        let ext = ok(group_cohomology(&x, 1, &FgAbGroup::cyclic(m as i64)), "Ext^1")?;
        let order = ext.order().ok_or("infinite Ext")?;
        ensure!(c.count() == want, "{name}: {} classes, expected {want}", c.count());
        ensure!(BigInt::from(c.count()) == order, "{name}: {} classes but |Ext^1| = {order}", c.count());
        ensure!(c.cocycles == want * c.coboundaries, "{name}: cocycles/coboundaries ≠ {want}");
        out.push(format!("{name} = {want}"));
    }
    Ok(out.join(", "))
}

// 9 ---------------------------------------------------------------------------

fn five_term() -> Outcome {
    let q8 = FiniteGroup::quaternion();
    let e = ok(Extension::from_normal(&q8, &center(&q8)), "Q8")?;
    let r = ok(stallings_tail(&e), "stallings")?;
    ensure!(r.passed(), "Q8 center: exactness fails");
    let s3 = FiniteGroup::symmetric(3);
    let e = ok(Extension::from_normal(&s3, &commutator_subgroup(&s3)), "S3")?;
    ensure!(ok(stallings_tail(&e), "stallings")?.passed(), "A3 ⊂ S3: exactness fails");
    let cat = catalogue();
    let mut rng = rng(9);
    for case in 0..30 {
        let (name, g) = pick(&mut rng, &cat);
        let x = rng.gen_range(0..g.order());
        let n = normal_closure(g, &[x]);
        let e = ok(Extension::from_normal(g, &n), "from_normal")?;
        let r = ok(stallings_tail(&e), "stallings")?;
        ensure!(r.passed(), "case {case}: {name} over the normal closure of {x}");
    }
    Ok("Q8, S3 and 30 random extensions pass".into())
}

// 10 --------------------------------------------------------------------------

fn a5_torsion_and_uct() -> Outcome {
    let a5 = FiniteGroup::alternating(5);
    let h2 = ok(hom_counting_h2(&a5), "hom counting")?;
    expect(&h2, "Z/2", "L_1(ab)(A5) via hom counting")?;
    let r = ok(acyclicity_class(&a5, 0, 1), "acyclicity")?;
    ensure!(r.in_class(0) && !r.in_class(1), "A5 class membership {:?}", r.members);
    expect(&r.values[1], "Z/2", "L_1(ab)(A5)")?;
    let p = ok(uct_pairing(&a5, 1, &FgAbGroup::cyclic(2)), "pairing")?;
    ensure!(p.bijective(), "pairing not bijective: {p:?}");
    Ok(format!("A5 ∈ T_0 ∖ T_1, L_1 ≅ Z/2, pairing bijective ({} route)", p.route))
}

// 11 --------------------------------------------------------------------------

fn uce_certificate() -> Outcome {
    let e = ok(sl2_cover(5), "SL(2,5)")?;
    let cert = ok(verify_uce(&e, &ok(standard_probes(&e), "probes")?), "verify")?;
    ensure!(cert.clauses.len() == 5 && cert.valid(), "SL(2,5) rejected: clauses {:?}", cert.failing_clauses());

    let a5 = FiniteGroup::alternating(5);
    let trivial = ok(Extension::from_normal(&a5, &Subgroup::trivial(&a5)), "trivial cover")?;
    let cert = ok(verify_uce(&trivial, &ok(standard_probes(&trivial), "probes")?), "verify")?;
    ensure!(cert.failing_clauses() == vec![4], "trivial cover fails {:?}, expected [4]", cert.failing_clauses());

    let z4 = FiniteGroup::cyclic(4);
    let two = ok(Subgroup::new(&z4, &[0, 2]), "subgroup")?;
    let nonperfect = ok(Extension::from_normal(&z4, &two), "Z/2 ↪ Z/4")?;
    let cert = ok(verify_uce(&nonperfect, &ok(standard_probes(&nonperfect), "probes")?), "verify")?;
    ensure!(cert.failing_clauses().first() == Some(&1), "non-perfect base fails {:?}", cert.failing_clauses());
    Ok("SL(2,5) valid on 5 clauses; trivial cover fails clause 4; Z/4 over Z/2 fails clause 1".into())
}

// 12 --------------------------------------------------------------------------

fn functor_contracts() -> Outcome {
    let cat: Vec<_> = catalogue().into_iter().filter(|(_, g)| g.order() <= 12).collect();
    let mut rng = rng(12);
    for case in 0..50 {
        let (gn, g) = pick(&mut rng, &cat).clone();
        let (hn, h) = pick(&mut rng, &cat).clone();
        let k = *pick(&mut rng, &[0i64, 2, 3, 4, 6]);
        let t = FunctorSpec::tensor_cyclic(k);
        let gh = g.product(&h);
        let m = h.order();
        let (ag, ah, agh) = (abelianisation(&g), abelianisation(&h), abelianisation(&gh));
        let (tg, th, tgh) = (t.obj(&ag.group), t.obj(&ah.group), t.obj(&agh.group));
        let hom = |s: &FiniteGroup, d: &FiniteGroup, f: &dyn Fn(usize) -> usize| GroupHom::new(s, d, s.elements().map(f).collect());
        let p1 = ok(hom(&gh, &g, &|i| i / m), "p1")?;
        let p2 = ok(hom(&gh, &h, &|i| i % m), "p2")?;
        let i1 = ok(hom(&g, &gh, &|x| x * m + h.identity()), "i1")?;
        let i2 = ok(hom(&h, &gh, &|y| g.identity() * m + y), "i2")?;
        let tmap = |f: &GroupHom, a: &_, b: &_, ta: &FgAbGroup, tb: &FgAbGroup| -> Result<AbMorphism, String> {
            Ok(t.mor_between(&ok(abelianisation_map(f, a, b), "ab map")?, ta, tb))
        };
        let s = direct_sum(&[tg.clone(), th.clone()]);
        let fwd = ok(
            ok(s.injections[0].compose(&tmap(&p1, &agh, &ag, &tgh, &tg)?), "compose")?
                .add(&ok(s.injections[1].compose(&tmap(&p2, &agh, &ah, &tgh, &th)?), "compose")?),
            "add",
        )?;
        let bwd = ok(
            ok(tmap(&i1, &ag, &agh, &tg, &tgh)?.compose(&s.projections[0]), "compose")?
                .add(&ok(tmap(&i2, &ah, &agh, &th, &tgh)?.compose(&s.projections[1]), "compose")?),
            "add",
        )?;
        ensure!(
            ok(fwd.compose(&bwd), "compose")?.is_identity() && ok(bwd.compose(&fwd), "compose")?.is_identity(),
            "case {case}: T({gn} × {hn}) → T({gn}) ⊕ T({hn}) is not an isomorphism (k = {k})"
        );
        // T(G) → T(ab G) along the quotient map
        let aq = abelianisation(&ag.quotient);
        let tq = t.obj(&aq.group);
        let u = tmap(&ag.projection, &ag, &aq, &tg, &tq)?;
        ensure!(u.is_iso(), "case {case}: T({gn}) → T(ab {gn}) is not an isomorphism (k = {k})");
        let refl = ok(derived_reflector(&g, 0, k as u64), "reflector")?;
        ensure!(refl.same_invariants(&tg), "case {case}: reflector of {gn} disagrees");
    }
    Ok("50 random pairs: products preserved, abelianisation commutes".into())
}

// -----------------------------------------------------------------------------

struct Criterion {
    id: usize,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let secs = Duration::from_secs;
    let all = [
        Criterion { id: 1, name: "SNF algebra", limit: secs(10), run: snf_algebra },
        Criterion { id: 2, name: "homology constructions", limit: secs(30), run: homology_equivalence },
        Criterion { id: 3, name: "LES exactness", limit: secs(60), run: les_exactness },
        Criterion { id: 4, name: "homological Yoneda", limit: secs(120), run: homological_yoneda_suite },
        Criterion { id: 5, name: "ladders", limit: secs(120), run: ladders },
        Criterion { id: 6, name: "abelian UCT", limit: secs(60), run: abelian_uct },
        Criterion { id: 7, name: "group homology golden values", limit: secs(300), run: group_homology_golden },
        Criterion { id: 8, name: "central extensions vs Ext", limit: secs(120), run: centr_vs_ext },
        Criterion { id: 9, name: "five-term tail", limit: secs(120), run: five_term },
        Criterion { id: 10, name: "A5 torsion classes and UCT", limit: secs(600), run: a5_torsion_and_uct },
        Criterion { id: 11, name: "universal central extension", limit: secs(600), run: uce_certificate },
        Criterion { id: 12, name: "functor contracts", limit: secs(60), run: functor_contracts },
    ];
    let wanted: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for c in all.iter().filter(|c| wanted.is_empty() || wanted.contains(&c.id)) {
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        let took = start.elapsed();
        let res = match res {
            Ok(d) if took > c.limit => Err(format!("over time limit: {d}")),
            r => r,
        };
        let (tag, detail) = match &res {
            Ok(d) => ("PASS", d.clone()),
            Err(e) => ("FAIL", e.clone()),
        };
        println!(
            "criterion {:>2} {tag}  {}: {detail}  ({:.1} s, limit {} s)",
            c.id,
            c.name,
            took.as_secs_f64(),
            c.limit.as_secs()
        );
        failed += res.is_err() as usize;
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
