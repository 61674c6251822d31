use noether_ops::closures::{
    bs_harness, monomial_closure_bruteforce_oracle, monomial_integral_closure, symbolic_power,
    NewtonPolyhedron,
};
use noether_ops::diffops::OperatorSet;
use noether_ops::groebner::{IdealHandle, RingSpec};
use noether_ops::poly::{Monomial, Polynomial};
use noether_ops::uniformity::{find_min_c, MinimalConstant, SearchBounds};
use proptest::prelude::*;

fn mono(e: Vec<u32>) -> Polynomial {
    Polynomial::monomial(Monomial::from_exponents(e))
}

/// Monomial ideals in two variables with one to three generators.
fn monomial_ideal() -> impl Strategy<Value = IdealHandle> {
    prop::collection::vec(prop::collection::vec(0u32..=4, 2), 1..=3).prop_map(|gens| {
        let gens = gens
            .into_iter()
            .filter(|e| e.iter().sum::<u32>() > 0)
            .map(mono)
            .collect::<Vec<_>>();
        IdealHandle::new(
            2,
            if gens.is_empty() {
                vec![mono(vec![1, 1])]
            } else {
                gens
            },
        )
    })
}

fn exps(i: &IdealHandle) -> Vec<Vec<u32>> {
    i.generators()
        .iter()
        .map(|g| g.terms().next().unwrap().0.exponents().to_vec())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn closure_contains_ideal_and_is_idempotent(i in monomial_ideal()) {
        let c = monomial_integral_closure(&i, 1).unwrap();
        prop_assert!(c.contains_ideal(&i));
        prop_assert!(monomial_integral_closure(&c, 1).unwrap().equals(&c));
    }

    #[test]
    fn oracle_agrees_with_polyhedron(i in monomial_ideal(), probes in prop::collection::vec(prop::collection::vec(0u32..=6, 2), 20)) {
        let c = monomial_integral_closure(&i, 1).unwrap();
        for e in exps(&c) {
            prop_assert!(monomial_closure_bruteforce_oracle(&i, &Monomial::from_exponents(e), 6).unwrap());
        }
        let poly = NewtonPolyhedron::of_ideal(&i).unwrap();
        for e in probes {
            let m = Monomial::from_exponents(e.clone());
            if !poly.contains_scaled(&e, 1) {
                prop_assert!(!monomial_closure_bruteforce_oracle(&i, &m, 6).unwrap());
            }
            prop_assert_eq!(poly.contains_scaled(&e, 1), c.contains(&Polynomial::monomial(m)));
        }
    }

    #[test]
    fn closure_of_power_contains_power_of_closure(i in monomial_ideal(), m in 1u32..=3) {
        let lhs = monomial_integral_closure(&i.power(m), 1).unwrap();
        let scaled = monomial_integral_closure(&i, m).unwrap();
        prop_assert!(lhs.equals(&scaled));
        let rhs = monomial_integral_closure(&i, 1).unwrap().power(m);
        prop_assert!(lhs.contains_ideal(&rhs));
    }

    #[test]
    fn symbolic_powers_of_coordinate_primes(k in 1usize..=2, n in 1u32..=3) {
        let vars = 3;
        let p = IdealHandle::new(vars, (0..k).map(|v| Polynomial::var(vars, v)).collect());
        let w = Polynomial::var(vars, 2);
        let s = symbolic_power(&p, n, &w).unwrap();
        prop_assert!(s.equals(&p.power(n)));
        prop_assert!(symbolic_power(&p, 1, &w).unwrap().equals(&p));
    }
}

#[test]
fn closure_harness_dominates_plain_search() {
    let r = RingSpec::parse("ring: Q[x,y] / (x^2)\nradical: (x)\nminimal-primes: [(x)]").unwrap();
    let ops = OperatorSet::parse("1; dx", r.vars(), r.radical().clone()).unwrap();
    let b = SearchBounds {
        n_max: 2,
        c_max: 3,
        degree: 10,
    };
    for text in ["(y^2; x*y)", "(y)", "(y^2)", "(y^3; x*y^2)"] {
        let j = r.parse_ideal(text).unwrap();
        let plain = find_min_c(&j, &ops, &r, b).unwrap();
        let closed = bs_harness(&j, &ops, &r, b).unwrap();
        for (a, c) in plain.rows.iter().zip(&closed.rows) {
            if let (MinimalConstant::Found(x), MinimalConstant::Found(y)) = (a.c_min, c.c_min) {
                assert!(y >= x, "{text}: n={} plain {x} closure {y}", a.n);
            }
        }
    }
}
