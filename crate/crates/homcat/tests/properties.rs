mod common;

use common::*;
use homcat::chains::{homology_coker, homology_ker};
use homcat::derived::{ext_group, left_derived, FunctorSpec};
use homcat::fgab::{smith_normal_form, tensor, FgAbGroup, IntMatrix};
use homcat::grp::abelianisation;
use homcat::grphom::{group_homology, Coeff};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn matrix() -> impl Strategy<Value = (Vec<Vec<i64>>, usize)> {
    (1usize..8, 1usize..8).prop_flat_map(|(r, c)| (prop::collection::vec(prop::collection::vec(-9i64..=9, c), r), Just(c)))
}

fn order(g: &FgAbGroup) -> BigInt {
    g.order().expect("finite")
}

proptest! {
    #[test]
    fn smith_form_is_a_unimodular_diagonalisation((rows, c) in matrix()) {
        let a = IntMatrix::from_rows(&rows, c).unwrap();
        let s = smith_normal_form(&a);
        prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.s.clone());
        prop_assert!(s.u.determinant().abs().is_one());
        prop_assert!(s.v.determinant().abs().is_one());
        for w in s.divisors.windows(2) {
            let divides = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            prop_assert!(divides);
        }
        prop_assert_eq!(FgAbGroup::from_presentation(a).free_rank(), rows.len() - s.rank());
    }

    #[test]
    fn cokernel_order_is_the_determinant((rows, _) in matrix()) {
        let n = rows.len();
        let sq: Vec<Vec<i64>> = rows.iter().map(|r| (0..n).map(|j| r.get(j).copied().unwrap_or(1)).collect()).collect();
        let a = IntMatrix::from_rows(&sq, n).unwrap();
        let det = a.determinant();
        let g = FgAbGroup::from_presentation(a);
        match g.order() {
            Some(o) => prop_assert_eq!(o, det.abs()),
            None => prop_assert!(det.is_zero()),
        }
    }

    #[test]
    fn kernel_and_cokernel_homology_agree(seed in any::<u64>()) {
        let c = random_complex(&mut rng(seed), 4, 3);
        for n in c.lo()..=c.hi() {
            let k = homology_ker(&c, n).unwrap().group;
            let q = homology_coker(&c, n).unwrap().group;
            prop_assert!(k.same_invariants(&q));
        }
    }

    #[test]
    fn tor_and_ext_of_cyclic_groups(n in 1i64..40, m in 1i64..40) {
        let g = n.gcd(&m);
        let tor = left_derived(&FunctorSpec::tensor_cyclic(m), 1, &FgAbGroup::cyclic(n)).unwrap();
        let ext = ext_group(&FgAbGroup::cyclic(n), &FgAbGroup::cyclic(m), 1).unwrap();
        prop_assert_eq!(order(&tor), BigInt::from(g));
        prop_assert_eq!(order(&ext), BigInt::from(g));
        prop_assert!(tor.same_invariants(&FgAbGroup::cyclic(g)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn first_homology_is_the_abelianisation(i in 0usize..29) {
        let cat = catalogue();
        let (_, g) = &cat[i % cat.len()];
        let h1 = group_homology(g, 1, Coeff::Z).unwrap();
        prop_assert!(h1.same_invariants(&abelianisation(g).group));
    }

    // |H_n(G; Z/k)| = |H_n ⊗ Z/k| · |Tor(H_{n-1}, Z/k)|
    #[test]
    fn mod_k_homology_splits(i in 0usize..29, k in 2u64..7, n in 1usize..3) {
        let cat: Vec<_> = catalogue().into_iter().filter(|(_, g)| g.order() <= 12).collect();
        let (_, g) = &cat[i % cat.len()];
        let hk = group_homology(g, n, Coeff::Mod(k)).unwrap();
        let hn = group_homology(g, n, Coeff::Z).unwrap();
        let hm = group_homology(g, n - 1, Coeff::Z).unwrap();
        let zk = FgAbGroup::cyclic(k as i64);
        let tor = left_derived(&FunctorSpec::tensor_cyclic(k as i64), 1, &hm).unwrap();
        prop_assert_eq!(order(&hk), order(&tensor(&hn, &zk)) * order(&tor));
    }
}
