#![allow(dead_code)]

use homcat::chains::{ChainComplex, ChainMap};
use homcat::fgab::{direct_sum, hom_group, kernel, AbMorphism, FgAbGroup, IntMatrix};
use homcat::grp::FiniteGroup;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small groups, all of order at most 24, with names.
pub fn catalogue() -> Vec<(String, FiniteGroup)> {
    let z = FiniteGroup::cyclic;
    let mut v: Vec<(String, FiniteGroup)> = Vec::new();
    for n in [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 16] {
        v.push((format!("Z/{n}"), z(n)));
    }
    v.push(("V4".into(), FiniteGroup::klein_four()));
    v.push(("S3".into(), FiniteGroup::symmetric(3)));
    v.push(("D4".into(), FiniteGroup::dihedral(4)));
    v.push(("Q8".into(), FiniteGroup::quaternion()));
    v.push(("Z/2×Z/4".into(), z(2).product(&z(4))));
    v.push(("Z/2^3".into(), z(2).product(&z(2)).product(&z(2))));
    v.push(("Z/3×Z/3".into(), z(3).product(&z(3))));
    v.push(("D5".into(), FiniteGroup::dihedral(5)));
    v.push(("Dic3".into(), FiniteGroup::dicyclic(3)));
    v.push(("A4".into(), FiniteGroup::alternating(4)));
    v.push(("D6".into(), FiniteGroup::dihedral(6)));
    v.push(("Z/2×S3".into(), z(2).product(&FiniteGroup::symmetric(3))));
    v.push(("Z/7⋊Z/3".into(), FiniteGroup::semidirect_cyclic(7, 3, 2).unwrap()));
    v.push(("Z/5⋊Z/4".into(), FiniteGroup::semidirect_cyclic(5, 4, 2).unwrap()));
    v.push(("S4".into(), FiniteGroup::symmetric(4)));
    v.push(("Z/2×A4".into(), z(2).product(&FiniteGroup::alternating(4))));
    v.push(("Z/3×Q8".into(), z(3).product(&FiniteGroup::quaternion())));
    v
}

pub fn random_abgroup(rng: &mut TestRng, max_gens: usize) -> FgAbGroup {
    let m = rng.gen_range(0..=max_gens);
    let r = rng.gen_range(0..=max_gens);
    let rows: Vec<Vec<i64>> = (0..m).map(|_| (0..r).map(|_| rng.gen_range(-6..=6)).collect()).collect();
    FgAbGroup::from_presentation(IntMatrix::from_rows(&rows, r).unwrap())
}

pub fn random_finite_abgroup(rng: &mut TestRng) -> FgAbGroup {
    let t: Vec<i64> = (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(2..=6)).collect();
    FgAbGroup::standard(0, &t)
}

/// A random element of `Hom(a, b)`, evaluated.
pub fn random_morphism(rng: &mut TestRng, a: &FgAbGroup, b: &FgAbGroup) -> AbMorphism {
    let (h, ev) = hom_group(a, b);
    let coords: Vec<i64> = (0..h.generator_count()).map(|_| rng.gen_range(-3..=3)).collect();
    ev.evaluate(&h.element_i64(&coords))
}

/// Objects are random presented groups; each `d_{n+1}` is a random map into `Ker d_n`.
pub fn random_complex(rng: &mut TestRng, max_len: usize, max_gens: usize) -> ChainComplex {
    let lo = rng.gen_range(-1..=1);
    let len = rng.gen_range(1..=max_len);
    let objs: Vec<FgAbGroup> = (0..len).map(|_| random_abgroup(rng, max_gens)).collect();
    let mut diffs: Vec<AbMorphism> = Vec::new();
    for i in 1..len {
        let d = if i == 1 {
            random_morphism(rng, &objs[1], &objs[0])
        } else {
            let (k, kin) = kernel(&diffs[i - 2]);
            kin.compose(&random_morphism(rng, &objs[i], &k)).unwrap()
        };
        diffs.push(d);
    }
    ChainComplex::new(lo, objs, diffs).unwrap()
}

fn unimodular(rng: &mut TestRng, r: usize) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let mut u: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| (i == j) as i64).collect()).collect();
    let mut inv = u.clone();
    if r < 2 {
        if r == 1 && rng.gen_bool(0.5) {
            u[0][0] = -1;
            inv[0][0] = -1;
        }
        return (u, inv);
    }
    for _ in 0..2 * r {
        let i = rng.gen_range(0..r);
        let j = (i + rng.gen_range(1..r)) % r;
        let c = rng.gen_range(-2..=2);
        // row_i += c·row_j on u, col_j −= c·col_i on inv
        for k in 0..r {
            u[i][k] += c * u[j][k];
        }
        for row in inv.iter_mut() {
            row[j] -= c * row[i];
        }
    }
    (u, inv)
}

fn matmul(a: &[Vec<i64>], b: &[Vec<i64>], inner: usize, cols: usize) -> Vec<Vec<i64>> {
    a.iter().map(|row| (0..cols).map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum()).collect()).collect()
}

/// Free complex on degrees `0..=top` with `H_i = 0` for `i < n`, built from
/// elementary pieces and scrambled by unimodular changes of basis.
pub fn random_free_complex(rng: &mut TestRng, n: i64, top: i64) -> ChainComplex {
    let len = (top + 1) as usize;
    let mut ranks = vec![0usize; len];
    // (degree of target, multiplier): Z_{i+1} → Z_i
    let mut arrows: Vec<(usize, i64)> = Vec::new();
    let mut free_at: Vec<usize> = Vec::new();
    for _ in 0..rng.gen_range(1..=5) {
        match rng.gen_range(0..3) {
            0 if top > 0 => arrows.push((rng.gen_range(0..top as usize), 1)),
            1 if top > n => arrows.push((rng.gen_range(n as usize..top as usize), rng.gen_range(2..=6))),
            _ => free_at.push(rng.gen_range(n as usize..=top as usize)),
        }
    }
    let mut pos: Vec<Vec<(usize, usize, i64)>> = vec![Vec::new(); len];
    for &(i, k) in &arrows {
        let (s, t) = (ranks[i + 1], ranks[i]);
        ranks[i + 1] += 1;
        ranks[i] += 1;
        pos[i + 1].push((s, t, k));
    }
    for &i in &free_at {
        ranks[i] += 1;
    }
    let bases: Vec<_> = ranks.iter().map(|&r| unimodular(rng, r)).collect();
    let objs: Vec<FgAbGroup> = ranks.iter().map(|&r| FgAbGroup::free(r)).collect();
    let mut diffs = Vec::new();
    for i in 1..len {
        let mut d = vec![vec![0i64; ranks[i]]; ranks[i - 1]];
        for &(s, t, k) in &pos[i] {
            d[t][s] = k;
        }
        // d' = U_{i-1} d U_i^{-1}
        let d = matmul(&bases[i - 1].0, &d, ranks[i - 1], ranks[i]);
        let d = matmul(&d, &bases[i].1, ranks[i], ranks[i]);
        diffs.push(AbMorphism::new(&objs[i], &objs[i - 1], IntMatrix::from_rows(&d, ranks[i]).unwrap()).unwrap());
    }
    ChainComplex::new(0, objs, diffs).unwrap()
}

/// `A ⊕ B` termwise over the common degree range, with the inclusion of `A`.
pub fn sum_complex(a: &ChainComplex, b: &ChainComplex) -> (ChainComplex, ChainMap) {
    let (lo, hi) = (a.lo().min(b.lo()), a.hi().max(b.hi()));
    let (a, b) = (a.padded(lo, hi), b.padded(lo, hi));
    let sums: Vec<_> = (lo..=hi).map(|n| direct_sum(&[a.obj(n), b.obj(n)])).collect();
    let objs: Vec<FgAbGroup> = sums.iter().map(|s| s.group.clone()).collect();
    let diffs: Vec<AbMorphism> = (lo + 1..=hi)
        .map(|n| {
            let (s, t) = (&sums[(n - lo) as usize], &sums[(n - lo - 1) as usize]);
            let da = t.injections[0].compose(&a.d(n).compose(&s.projections[0]).unwrap()).unwrap();
            let db = t.injections[1].compose(&b.d(n).compose(&s.projections[1]).unwrap()).unwrap();
            da.add(&db).unwrap()
        })
        .collect();
    let c = ChainComplex::new(lo, objs, diffs).unwrap();
    let inj = ChainMap::new(&a, &c, lo, sums.iter().map(|s| s.injections[0].clone()).collect()).unwrap();
    (c, inj)
}

/// `k·ι + (d h + h d)` from a random complex into its sum with another.
pub fn random_chain_map(rng: &mut TestRng) -> ChainMap {
    let c = random_complex(rng, 3, 2);
    let e = random_complex(rng, 2, 2);
    let (d, inj) = sum_complex(&c, &e);
    let c = inj.source().clone();
    let (lo, hi) = (c.lo(), c.hi());
    let k: i64 = rng.gen_range(-3..=3);
    let h: Vec<AbMorphism> = (lo - 1..=hi).map(|n| random_morphism(rng, &c.obj(n), &d.obj(n + 1))).collect();
    let hat = |n: i64| h[(n - lo + 1) as usize].clone();
    let comps: Vec<AbMorphism> = (lo..=hi)
        .map(|n| {
            let scaled = inj.at(n).compose(&AbMorphism::scalar(&c.obj(n), k)).unwrap();
            let dh = d.d(n + 1).compose(&hat(n)).unwrap();
            let hd = hat(n - 1).compose(&c.d(n)).unwrap();
            scaled.add(&dh).unwrap().add(&hd).unwrap()
        })
        .collect();
    ChainMap::new(&c, &d, lo, comps).unwrap()
}

pub fn pick<'a, T>(rng: &mut TestRng, v: &'a [T]) -> &'a T {
    v.choose(rng).unwrap()
}
