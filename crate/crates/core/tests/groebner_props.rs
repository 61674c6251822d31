mod common;

use common::poly;
use noether_ops::groebner::{buchberger, IdealHandle};
use noether_ops::poly::{MonomialOrder, Polynomial};
use proptest::prelude::*;

fn ideal(nvars: usize) -> impl Strategy<Value = IdealHandle> {
    prop::collection::vec(poly(nvars, 3, 3), 1..=3).prop_map(move |g| IdealHandle::new(nvars, g))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn combinations_reduce_to_zero(i in ideal(3), cs in prop::collection::vec(poly(3, 3, 3), 3)) {
        let mut f = Polynomial::zero(3);
        for (g, c) in i.generators().iter().zip(&cs) {
            f = &f + &(g * c);
        }
        prop_assert!(i.normal_form(&f).is_zero());
    }

    #[test]
    fn normal_form_linear_and_idempotent(i in ideal(3), f in poly(3, 6, 6), g in poly(3, 6, 6)) {
        let nf = |p: &Polynomial| i.normal_form(p);
        prop_assert_eq!(nf(&(&f + &g)), &nf(&f) + &nf(&g));
        prop_assert_eq!(nf(&nf(&f)), nf(&f));
    }

    #[test]
    fn basis_generates_same_ideal(i in ideal(2)) {
        let gb = IdealHandle::new(2, i.groebner_basis().to_vec());
        prop_assert!(gb.contains_ideal(&i));
        prop_assert!(i.contains_ideal(&gb));
        prop_assert_eq!(buchberger(i.generators(), &MonomialOrder::Grevlex), i.groebner_basis().to_vec());
    }

    #[test]
    fn power_products(i in ideal(2), m in 0u32..3, n in 0u32..3) {
        let prod = i.power(m).product(&i.power(n)).unwrap();
        prop_assert!(i.power(m + n).contains_ideal(&prod));
    }

    #[test]
    fn saturation_contains_and_stabilizes(i in ideal(2), g in poly(2, 2, 2)) {
        prop_assume!(!g.is_zero());
        let s = i.saturate(&g).unwrap();
        prop_assert!(s.contains_ideal(&i));
        prop_assert!(s.saturate(&g).unwrap().equals(&s));
    }

    #[test]
    fn intersection_in_both(i in ideal(2), j in ideal(2)) {
        let k = i.intersect(&j).unwrap();
        prop_assert!(i.contains_ideal(&k));
        prop_assert!(j.contains_ideal(&k));
        prop_assert!(k.equals(&k));
        prop_assert_eq!(i.equals(&j), j.equals(&i));
    }
}
