mod common;

use common::poly;
use noether_ops::diffops::DiffOp;
use noether_ops::groebner::IdealHandle;
use noether_ops::poly::{parse_polynomial, ratio, Monomial, Polynomial};
use proptest::prelude::*;

fn diffop(nvars: usize) -> impl Strategy<Value = DiffOp> {
    let term = (poly(nvars, 2, 2), prop::collection::vec(0u32..=2, nvars));
    prop::collection::vec(term, 1..=4).prop_map(move |ts| {
        DiffOp::new(
            nvars,
            ts.into_iter()
                .map(|(c, a)| (c, Monomial::from_exponents(a))),
            None,
        )
        .unwrap()
    })
}

fn modulus() -> impl Strategy<Value = Option<IdealHandle>> {
    prop_oneof![
        Just(None),
        Just(Some(IdealHandle::new(
            2,
            vec![parse_polynomial("x", &["x", "y"]).unwrap()]
        ))),
        Just(Some(IdealHandle::new(
            2,
            vec![parse_polynomial("x - y^2", &["x", "y"]).unwrap()]
        ))),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn apply_is_linear(d in diffop(2), m in modulus(), f in poly(2, 5, 5), g in poly(2, 5, 5), a in -5i64..5, b in 1i64..4) {
        let d = match m { Some(m) => d.with_modulus(m), None => d };
        let (qa, qb) = (ratio(a, b), ratio(b, 7));
        let lhs = d.apply(&(&f.scale(&qa) + &g.scale(&qb))).unwrap();
        let rhs = &d.apply(&f).unwrap().scale(&qa) + &d.apply(&g).unwrap().scale(&qb);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_drops_order(d in diffop(2), v in 0usize..2) {
        prop_assume!(d.order() >= 1);
        let b = d.bracket(&Polynomial::var(2, v));
        prop_assert!(b.is_zero() || b.order() < d.order());
    }

    #[test]
    fn bracket_matches_definition(d in diffop(2), f in poly(2, 2, 3), h in poly(2, 4, 4)) {
        let lhs = d.bracket(&f).apply(&h).unwrap();
        let rhs = &d.apply(&(&f * &h)).unwrap() - &(&f * &d.apply(&h).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn determined_by_low_degree_monomials(d in diffop(2), m in modulus()) {
        let d = match m { Some(m) => d.with_modulus(m), None => d };
        let k = d.order();
        let r = DiffOp::reconstruct(2, k, d.modulus().cloned(), |b| d.apply(&Polynomial::monomial(b.clone()))).unwrap();
        prop_assert_eq!(r, d);
    }
}
