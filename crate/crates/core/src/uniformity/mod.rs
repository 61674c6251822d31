//! Differential colons `I^m :_{R_red} {δ_i}`, the empirical search for
//! the least shift `c` with `I^{n+c} :_{R_red} {δ_i} ⊆ J^n`, the reverse
//! containment, separating operators and filtration checks.

mod constants;
mod filtration;
mod separating;
mod subspace;

pub use constants::{
    artin_rees_experiment, check_reverse, colon_subspace, diff_colon, find_min_c, find_min_c_with,
    min_c_row, power_schedule, subspace_in_ideal, witness_refutes, BundleRecord, ConstantReport,
    ConstantRow, Containment, EntryRecord, ExperimentBundle, ExperimentParams, FamilyEntry,
    MinimalConstant, ReportRecord, ReverseCheck, ReverseRecord, RowRecord, SampleRecord, Schedule,
    SearchBounds,
};
pub use filtration::{verify_filtration, FiltrationCheck, FiltrationFailure, FiltrationReport};
pub use separating::{separating_operator, SeparatingOperatorResult, LINEARITY_SAMPLES};
pub use subspace::TruncatedSubspace;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffops::OperatorSet;
    use crate::groebner::{IdealHandle, RingSpec};
    use crate::poly::Polynomial;

    fn square_zero() -> (RingSpec, OperatorSet) {
        let r =
            RingSpec::parse("ring: Q[x,y] / (x^2)\nradical: (x)\nminimal-primes: [(x)]").unwrap();
        let ops = OperatorSet::parse("1; dx", r.vars(), r.radical().clone()).unwrap();
        (r, ops)
    }

    fn bounds(n_max: u32, c_max: u32, degree: u32) -> SearchBounds {
        SearchBounds {
            n_max,
            c_max,
            degree,
        }
    }

    #[test]
    fn colon_examples() {
        let (r, ops) = square_zero();
        let p = |s: &str| r.parse_poly(s).unwrap();
        let i = r.parse_ideal("(y)").unwrap();
        // f = a(y) + x·b(y) + x²(...) with a, b ∈ (y³)
        let s = diff_colon(&i, 3, &ops, &r, 4).unwrap();
        let mut expected: Vec<Polynomial> = ["y^3", "y^4", "x*y^3"].iter().map(|t| p(t)).collect();
        for m in crate::poly::monomials_up_to(2, 2) {
            expected.push(p("x^2").mul_monomial(&m));
        }
        assert_eq!(s, TruncatedSubspace::spanned_by(2, 4, &expected).unwrap());
        assert!(diff_colon(&i, 0, &ops, &r, 3).unwrap().is_full());

        let proj = OperatorSet::parse("1", r.vars(), r.radical().clone()).unwrap();
        let s = diff_colon(&i, 1, &proj, &r, 2).unwrap();
        let e: Vec<Polynomial> = ["y", "y^2", "x*y", "x", "x^2"]
            .iter()
            .map(|t| p(t))
            .collect();
        assert_eq!(s, TruncatedSubspace::spanned_by(2, 2, &e).unwrap());

        let wrong = OperatorSet::parse("1", r.vars(), IdealHandle::zero(2)).unwrap();
        assert!(matches!(
            diff_colon(&i, 1, &wrong, &r, 2),
            Err(crate::Error::ModulusMismatch(_))
        ));
    }

    #[test]
    fn containment_examples() {
        let (r, _) = square_zero();
        let p = |s: &str| r.parse_poly(s).unwrap();
        let j = r.parse_ideal("(x - y)").unwrap();
        let s = TruncatedSubspace::spanned_by(2, 3, &[p("y")]).unwrap();
        assert_eq!(subspace_in_ideal(&s, &j, &r), Containment::Witness(p("y")));
        for n in 1..4 {
            let s = TruncatedSubspace::spanned_by(2, n + 1, &[p(&format!("x*y^{n}"))]).unwrap();
            assert_eq!(
                subspace_in_ideal(&s, &j.power(n), &r),
                Containment::Contained
            );
        }
        assert_eq!(
            subspace_in_ideal(&TruncatedSubspace::empty(2, 3), &j, &r),
            Containment::Contained
        );
    }

    #[test]
    fn minimal_constants() {
        let (r, ops) = square_zero();
        let j = r.parse_ideal("(x - y)").unwrap();
        let rep = find_min_c(&j, &ops, &r, bounds(3, 3, 12)).unwrap();
        assert!(rep
            .rows
            .iter()
            .all(|row| row.c_min == MinimalConstant::Found(1)));
        assert_eq!(rep.rows[0].witness, Some(r.parse_poly("y").unwrap()));
        for row in &rep.rows {
            let w = row.witness.as_ref().unwrap();
            let k = r.image_in_reduced(&j).power(row.n + row.witness_c.unwrap());
            assert!(witness_refutes(w, &k, &j, row.n, &ops, &r).unwrap());
        }
        for text in ["(x; y)", "(y)", "(0)"] {
            let rep =
                find_min_c(&r.parse_ideal(text).unwrap(), &ops, &r, bounds(3, 3, 12)).unwrap();
            assert!(
                rep.rows
                    .iter()
                    .all(|row| row.c_min == MinimalConstant::Found(0)),
                "{text}"
            );
            assert_eq!(rep.max_constant(), 0);
        }
        let rep = find_min_c(&j, &ops, &r, bounds(1, 0, 12)).unwrap();
        assert_eq!(rep.rows[0].c_min, MinimalConstant::NotFound(0));
        assert_eq!(rep.rows[0].c_min.to_string(), "NOT_FOUND(<=0)");
        assert!(rep.exhausted());
    }

    #[test]
    fn reverse_containment() {
        let (r, ops) = square_zero();
        for text in ["(x - y)", "(x; y)", "(y)"] {
            let j = r.parse_ideal(text).unwrap();
            for n in 0..=3 {
                let rc = check_reverse(&j, &ops, &r, n, 12).unwrap();
                assert!(rc.passed, "{text} n={n}: {:?}", rc.witness);
            }
        }
        let proj = OperatorSet::parse("1", r.vars(), r.radical().clone()).unwrap();
        assert!(
            check_reverse(&r.parse_ideal("(x - y)").unwrap(), &proj, &r, 2, 8)
                .unwrap()
                .passed
        );
    }

    #[test]
    fn experiment_aggregates() {
        let (r, ops) = square_zero();
        let family: Vec<(String, IdealHandle)> =
            [("J1", "(x - y)"), ("J2", "(x; y)"), ("J3", "(y)")]
                .iter()
                .map(|(id, t)| (id.to_string(), r.parse_ideal(t).unwrap()))
                .collect();
        let params = ExperimentParams {
            bounds: bounds(3, 3, 12),
            seed: 1,
            samples: 5,
            filtration_length: Some(2),
        };
        let b = artin_rees_experiment(&family, &ops, &r, &params, &power_schedule).unwrap();
        assert_eq!(b.aggregate, 1);
        assert_eq!(b.effective_bound, Some(2));
        assert!(!b.refuted());
        let empty = artin_rees_experiment(&[], &ops, &r, &params, &power_schedule).unwrap();
        assert_eq!(empty.aggregate, 0);
        assert!(empty.entries.is_empty());
    }
}
