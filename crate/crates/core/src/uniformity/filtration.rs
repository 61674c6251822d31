use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{IdealHandle, RingSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FiltrationCheck {
    /// The chain starts at `N` and ends at `(1)`.
    Endpoints,
    /// `a_{i-1} ⊊ a_i`.
    Strictness,
    /// `p_i·a_i ⊆ a_{i-1}`.
    Annihilation,
    /// `p_i` is a declared minimal prime.
    MinimalPrime,
    /// The last proper term is a declared minimal prime.
    LastTerm,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationFailure {
    /// Index `i` of the step `a_{i-1} ⊆ a_i`; 0 for whole-chain checks.
    pub step: usize,
    pub check: FiltrationCheck,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationReport {
    pub passed: bool,
    pub failures: Vec<FiltrationFailure>,
    /// Conditions taken on trust.
    pub assumptions: Vec<String>,
}

/// Structural checks on a chain `N = a_0 ⊊ a_1 ⊊ … ⊊ a_k = (1)` of ideals
/// of `R` with primes `p_1, …, p_k`. The condition on associated primes of
/// the quotients is not checked and is listed as an assumption.
pub fn verify_filtration(
    chain: &[IdealHandle],
    primes: &[IdealHandle],
    ring: &RingSpec,
) -> Result<FiltrationReport> {
    let n = ring.nvars();
    if chain.len() < 2 {
        return Err(Error::InvalidArgument(
            "a filtration needs at least two terms".into(),
        ));
    }
    if primes.len() + 1 != chain.len() {
        return Err(Error::InvalidArgument(format!(
            "{} terms need {} primes",
            chain.len(),
            chain.len() - 1
        )));
    }
    if let Some(i) = chain.iter().chain(primes).find(|i| i.nvars() != n) {
        return Err(Error::VariableMismatch {
            expected: n,
            found: i.nvars(),
        });
    }
    let lifted: Vec<IdealHandle> = chain.iter().map(|a| ring.lift(a)).collect();
    let mut failures = Vec::new();
    let mut fail = |step, check, detail: String| {
        failures.push(FiltrationFailure {
            step,
            check,
            detail,
        })
    };

    if !lifted[0].equals(ring.defining_ideal())
        && !lifted[0].equals(&ring.lift(&IdealHandle::zero(n)))
    {
        fail(
            0,
            FiltrationCheck::Endpoints,
            "first term is not the zero ideal of R".into(),
        );
    }
    if !lifted[lifted.len() - 1].is_unit() {
        fail(
            0,
            FiltrationCheck::Endpoints,
            "last term is not the unit ideal".into(),
        );
    }
    for i in 1..lifted.len() {
        let (lower, upper) = (&lifted[i - 1], &lifted[i]);
        if let Some(g) = upper.missing_generator(lower) {
            fail(
                i,
                FiltrationCheck::Strictness,
                format!(
                    "{} is in term {} but not in term {i}",
                    ring.format(g),
                    i - 1
                ),
            );
        } else if lower.contains_ideal(upper) {
            fail(
                i,
                FiltrationCheck::Strictness,
                format!("terms {} and {i} are equal", i - 1),
            );
        }
        let p = &primes[i - 1];
        'products: for g in p.generators() {
            for h in upper.generators() {
                let prod = g * h;
                if !lower.contains(&prod) {
                    fail(
                        i,
                        FiltrationCheck::Annihilation,
                        format!(
                            "({})*({}) is not in term {}",
                            ring.format(g),
                            ring.format(h),
                            i - 1
                        ),
                    );
                    break 'products;
                }
            }
        }
        if !ring.is_minimal_prime(p) {
            fail(
                i,
                FiltrationCheck::MinimalPrime,
                format!("prime {} is not a declared minimal prime", i),
            );
        }
    }
    let last_proper = &lifted[lifted.len() - 2];
    if !ring.minimal_primes().iter().any(|q| q.equals(last_proper)) {
        fail(
            chain.len() - 2,
            FiltrationCheck::LastTerm,
            "last proper term is not a declared minimal prime".into(),
        );
    }
    Ok(FiltrationReport {
        passed: failures.is_empty(),
        failures,
        assumptions: vec!["each quotient a_i/a_(i-1) has only p_i as associated prime".into()],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideals(r: &RingSpec, texts: &[&str]) -> Vec<IdealHandle> {
        texts.iter().map(|t| r.parse_ideal(t).unwrap()).collect()
    }

    #[test]
    fn square_zero_chain() {
        let r =
            RingSpec::parse("ring: Q[x,y] / (x^2)\nradical: (x)\nminimal-primes: [(x)]").unwrap();
        let rep = verify_filtration(
            &ideals(&r, &["(x^2)", "(x)", "(1)"]),
            &ideals(&r, &["(x)", "(x)"]),
            &r,
        )
        .unwrap();
        assert!(rep.passed, "{rep:?}");
        assert_eq!(rep.assumptions.len(), 1);
    }

    #[test]
    fn cube_zero_chain() {
        let r =
            RingSpec::parse("ring: Q[x,y] / (x^3)\nradical: (x)\nminimal-primes: [(x)]").unwrap();
        let chain = ideals(&r, &["(x^3)", "(x^2)", "(x)", "(1)"]);
        let rep = verify_filtration(&chain, &ideals(&r, &["(x)", "(x)", "(x)"]), &r).unwrap();
        assert!(rep.passed, "{rep:?}");
    }

    #[test]
    fn failures_are_reported() {
        let r =
            RingSpec::parse("ring: Q[x,y] / (x^2)\nradical: (x)\nminimal-primes: [(x)]").unwrap();
        let rep = verify_filtration(
            &ideals(&r, &["(x^2)", "(x)", "(x)", "(1)"]),
            &ideals(&r, &["(x)", "(x)", "(x)"]),
            &r,
        )
        .unwrap();
        assert!(!rep.passed);
        assert!(rep
            .failures
            .iter()
            .any(|f| f.check == FiltrationCheck::Strictness && f.step == 2));

        let rep =
            verify_filtration(&ideals(&r, &["(x^2)", "(1)"]), &ideals(&r, &["(x)"]), &r).unwrap();
        assert!(rep
            .failures
            .iter()
            .any(|f| f.check == FiltrationCheck::Annihilation));
        assert!(rep
            .failures
            .iter()
            .any(|f| f.check == FiltrationCheck::LastTerm));

        let rep = verify_filtration(
            &ideals(&r, &["(x^2)", "(x)", "(1)"]),
            &ideals(&r, &["(x)", "(y)"]),
            &r,
        )
        .unwrap();
        assert!(rep
            .failures
            .iter()
            .any(|f| f.check == FiltrationCheck::MinimalPrime));
    }
}
