#![allow(dead_code)]

use noether_ops::poly::{ratio, Monomial, Polynomial};
use proptest::prelude::*;

/// Random polynomial in `nvars` variables of total degree at most `deg`.
pub fn poly(nvars: usize, deg: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    let term = (prop::collection::vec(0..=deg, nvars), -9i64..=9, 1i64..=3);
    prop::collection::vec(term, 0..=max_terms).prop_map(move |terms| {
        let mut p = Polynomial::zero(nvars);
        for (mut e, n, d) in terms {
            // scale the exponent vector down into the degree bound
            while e.iter().sum::<u32>() > deg {
                let i = (0..e.len()).max_by_key(|&i| e[i]).expect("nonempty");
                e[i] -= 1;
            }
            p.add_term(Monomial::from_exponents(e), ratio(n, d));
        }
        p
    })
}
