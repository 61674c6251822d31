use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::TruncatedSubspace;
use crate::diffops::{check_order_lemma, OperatorSet, SampledCheck};
use crate::error::{Error, Result};
use crate::groebner::{IdealHandle, RingSpec};
use crate::noetherian::{
    verify_noetherian_ops, CertificateRecord, CertificateStatus, NoetherianCertificate,
};
use crate::poly::{format_polynomial, monomials_up_to, Polynomial};

/// Ideal (of `P`) whose differential colon is tested at `(n, c)`, given the
/// image `I` of `J` in the reduced ring.
pub type Schedule<'a> = dyn Fn(&IdealHandle, u32, u32) -> Result<IdealHandle> + Sync + 'a;

/// `I^{n+c}`.
pub fn power_schedule(i: &IdealHandle, n: u32, c: u32) -> Result<IdealHandle> {
    Ok(i.power(n + c))
}

fn check_modulus(ops: &OperatorSet, ring: &RingSpec) -> Result<()> {
    if ops.nvars() != ring.nvars() {
        return Err(Error::VariableMismatch {
            expected: ring.nvars(),
            found: ops.nvars(),
        });
    }
    if !ops.modulus().equals(ring.radical()) {
        return Err(Error::ModulusMismatch(
            "operators must reduce modulo the radical of the ring".into(),
        ));
    }
    Ok(())
}

/// `{f ∈ P_{≤D} : δ(f) ∈ K + rad for every δ}`.
pub fn colon_subspace(
    k: &IdealHandle,
    ops: &OperatorSet,
    ring: &RingSpec,
    degree: u32,
) -> Result<TruncatedSubspace> {
    check_modulus(ops, ring)?;
    let target = k.sum(ring.radical())?;
    TruncatedSubspace::operator_kernel(ops.ops(), &target, degree)
}

/// The differential colon `I^m :_{R_red} {δ_i}` truncated at degree `D`.
pub fn diff_colon(
    i: &IdealHandle,
    m: u32,
    ops: &OperatorSet,
    ring: &RingSpec,
    degree: u32,
) -> Result<TruncatedSubspace> {
    if degree == 0 {
        return Err(Error::InvalidArgument(
            "degree bound must be at least 1".into(),
        ));
    }
    colon_subspace(&i.power(m), ops, ring, degree)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Containment {
    /// Every basis element lies in the ideal (a statement about degree ≤ D only).
    Contained,
    /// A basis element outside the ideal; refutes containment outright.
    Witness(Polynomial),
}

fn first_outside(s: &TruncatedSubspace, lifted: &IdealHandle) -> Containment {
    s.basis()
        .into_iter()
        .find(|f| !lifted.contains(f))
        .map_or(Containment::Contained, Containment::Witness)
}

/// Tests `S ⊆ J` in `R`, i.e. against `J + N`.
pub fn subspace_in_ideal(s: &TruncatedSubspace, j: &IdealHandle, ring: &RingSpec) -> Containment {
    first_outside(s, &ring.lift(j))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinimalConstant {
    Found(u32),
    /// No `c ≤ c_max` worked.
    NotFound(u32),
}

impl fmt::Display for MinimalConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinimalConstant::Found(c) => write!(f, "{c}"),
            MinimalConstant::NotFound(c) => write!(f, "NOT_FOUND(<={c})"),
        }
    }
}

impl Serialize for MinimalConstant {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstantRow {
    pub n: u32,
    pub c_min: MinimalConstant,
    /// Element of the colon at `witness_c` that is not in `J^n`.
    pub witness: Option<Polynomial>,
    pub witness_c: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBounds {
    pub n_max: u32,
    pub c_max: u32,
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstantReport {
    pub rows: Vec<ConstantRow>,
    pub bounds: SearchBounds,
    pub verdict: String,
}

impl ConstantReport {
    fn new(rows: Vec<ConstantRow>, bounds: SearchBounds) -> Self {
        let exhausted: Vec<String> = rows
            .iter()
            .filter(|r| matches!(r.c_min, MinimalConstant::NotFound(_)))
            .map(|r| r.n.to_string())
            .collect();
        let verdict = if exhausted.is_empty() {
            format!(
                "c = {} suffices for n <= {} at degree <= {}",
                max_found(&rows),
                bounds.n_max,
                bounds.degree
            )
        } else {
            format!(
                "no c <= {} found for n in {{{}}}",
                bounds.c_max,
                exhausted.join(", ")
            )
        };
        ConstantReport {
            rows,
            bounds,
            verdict,
        }
    }

    /// True if some row hit `c_max` without success.
    pub fn exhausted(&self) -> bool {
        self.rows
            .iter()
            .any(|r| matches!(r.c_min, MinimalConstant::NotFound(_)))
    }

    /// Largest `c_min` among rows where one was found.
    pub fn max_constant(&self) -> u32 {
        max_found(&self.rows)
    }

    pub fn record<S: AsRef<str>>(&self, vars: &[S]) -> ReportRecord {
        ReportRecord {
            bounds: self.bounds,
            verdict: self.verdict.clone(),
            rows: self
                .rows
                .iter()
                .map(|r| RowRecord {
                    n: r.n,
                    c_min: r.c_min,
                    witness: r.witness.as_ref().map(|w| format_polynomial(w, vars)),
                    witness_c: r.witness_c,
                })
                .collect(),
        }
    }
}

fn max_found(rows: &[ConstantRow]) -> u32 {
    rows.iter()
        .filter_map(|r| match r.c_min {
            MinimalConstant::Found(c) => Some(c),
            MinimalConstant::NotFound(_) => None,
        })
        .max()
        .unwrap_or(0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowRecord {
    pub n: u32,
    pub c_min: MinimalConstant,
    pub witness: Option<String>,
    pub witness_c: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportRecord {
    pub bounds: SearchBounds,
    pub verdict: String,
    pub rows: Vec<RowRecord>,
}

/// Least `c ≤ c_max` for one `n`, searching upward from 0.
pub fn min_c_row(
    j: &IdealHandle,
    ops: &OperatorSet,
    ring: &RingSpec,
    n: u32,
    bounds: SearchBounds,
    schedule: &Schedule<'_>,
) -> Result<ConstantRow> {
    check_modulus(ops, ring)?;
    if n == 0 {
        return Ok(ConstantRow {
            n,
            c_min: MinimalConstant::Found(0),
            witness: None,
            witness_c: None,
        });
    }
    let image = ring.image_in_reduced(j);
    let jn = ring.lift(&j.power(n));
    let mut last: Option<(u32, Polynomial)> = None;
    for c in 0..=bounds.c_max {
        let k = schedule(&image, n, c)?;
        let s = colon_subspace(&k, ops, ring, bounds.degree)?;
        match first_outside(&s, &jn) {
            Containment::Contained => {
                let (witness_c, witness) = last.unzip();
                return Ok(ConstantRow {
                    n,
                    c_min: MinimalConstant::Found(c),
                    witness,
                    witness_c,
                });
            }
            Containment::Witness(f) => last = Some((c, f)),
        }
    }
    let (witness_c, witness) = last.unzip();
    Ok(ConstantRow {
        n,
        c_min: MinimalConstant::NotFound(bounds.c_max),
        witness,
        witness_c,
    })
}

/// Per-`n` search of the least `c` with `colon(schedule(I, n, c)) ⊆ J^n`,
/// for `n = 1..=n_max`. Rows are computed in parallel and returned in order.
pub fn find_min_c_with(
    j: &IdealHandle,
    ops: &OperatorSet,
    ring: &RingSpec,
    bounds: SearchBounds,
    schedule: &Schedule<'_>,
) -> Result<ConstantReport> {
    let rows = (1..=bounds.n_max)
        .into_par_iter()
        .map(|n| min_c_row(j, ops, ring, n, bounds, schedule))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConstantReport::new(rows, bounds))
}

/// Least `c` with `I^{n+c} :_{R_red} {δ_i} ⊆ J^n` (at degree ≤ D) for each
/// `n ≤ n_max`, where `I` is the image of `J` in the reduced ring.
pub fn find_min_c(
    j: &IdealHandle,
    ops: &OperatorSet,
    ring: &RingSpec,
    bounds: SearchBounds,
) -> Result<ConstantReport> {
    find_min_c_with(j, ops, ring, bounds, &power_schedule)
}

/// Re-checks a recorded witness from scratch: every operator sends `f`
/// into `K + rad`, and `f ∉ J^n + N`.
pub fn witness_refutes(
    f: &Polynomial,
    k: &IdealHandle,
    j: &IdealHandle,
    n: u32,
    ops: &OperatorSet,
    ring: &RingSpec,
) -> Result<bool> {
    let target = k.sum(ring.radical())?;
    for op in ops.ops() {
        if !target.contains(&op.apply(f)?) {
            return Ok(false);
        }
    }
    Ok(!ring.lift(&j.power(n)).contains(f))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReverseCheck {
    pub n: u32,
    pub passed: bool,
    /// Number of polynomials tested.
    pub checked: usize,
    pub witness: Option<Polynomial>,
}

/// Checks `J^{n+e} ⊆ I^n :_{R_red} {δ_i}` with `e` the maximal operator
/// order, on `x^β·g` for generators `g` of `J^{n+e}`, `|β| ≤ e` and total
/// degree at most `D`.
pub fn check_reverse(
    j: &IdealHandle,
    ops: &OperatorSet,
    ring: &RingSpec,
    n: u32,
    degree: u32,
) -> Result<ReverseCheck> {
    check_modulus(ops, ring)?;
    let e = ops.max_order();
    let target = ring.image_in_reduced(j).power(n).sum(ring.radical())?;
    let power = j.power(n + e);
    let shifts = monomials_up_to(ring.nvars(), e);
    let mut checked = 0;
    for g in power.generators() {
        for beta in &shifts {
            let h = g.mul_monomial(beta);
            if h.total_degree().unwrap_or(0) > degree {
                continue;
            }
            checked += 1;
            for op in ops.ops() {
                if !target.contains(&op.apply(&h)?) {
                    return Ok(ReverseCheck {
                        n,
                        passed: false,
                        checked,
                        witness: Some(h),
                    });
                }
            }
        }
    }
    Ok(ReverseCheck {
        n,
        passed: true,
        checked,
        witness: None,
    })
}

#[derive(Clone, Debug)]
pub struct ExperimentParams {
    pub bounds: SearchBounds,
    pub seed: u64,
    /// Samples per operator for the order lemma check.
    pub samples: usize,
    /// Length of a filtration of `R`, if known; used for the effective bound.
    pub filtration_length: Option<u32>,
}

#[derive(Clone, Debug)]
pub struct FamilyEntry {
    pub id: String,
    pub ideal: IdealHandle,
    pub report: ConstantReport,
    pub reverse: Vec<ReverseCheck>,
    pub order_lemma: Vec<SampledCheck>,
}

#[derive(Clone, Debug)]
pub struct ExperimentBundle {
    pub certificate: NoetherianCertificate,
    pub entries: Vec<FamilyEntry>,
    /// Maximum of the found `c_min` over the family.
    pub aggregate: u32,
    pub exhausted: bool,
    pub operator_order: u32,
    /// `k·e` for a filtration of length `k`.
    pub effective_bound: Option<u32>,
    pub seed: u64,
}

impl ExperimentBundle {
    pub fn refuted(&self) -> bool {
        self.certificate.status == CertificateStatus::Refuted
            || self.entries.iter().any(|e| {
                e.reverse.iter().any(|r| !r.passed) || e.order_lemma.iter().any(|s| !s.passed())
            })
    }

    pub fn record<S: AsRef<str>>(&self, vars: &[S]) -> BundleRecord {
        let fmt = |p: &Polynomial| format_polynomial(p, vars);
        BundleRecord {
            certificate: self.certificate.record(vars),
            aggregate: self.aggregate,
            exhausted: self.exhausted,
            operator_order: self.operator_order,
            effective_bound: self.effective_bound,
            seed: self.seed,
            entries: self
                .entries
                .iter()
                .map(|e| EntryRecord {
                    id: e.id.clone(),
                    generators: e.ideal.generators().iter().map(fmt).collect(),
                    report: e.report.record(vars),
                    reverse: e
                        .reverse
                        .iter()
                        .map(|r| ReverseRecord {
                            n: r.n,
                            passed: r.passed,
                            checked: r.checked,
                            witness: r.witness.as_ref().map(fmt),
                        })
                        .collect(),
                    order_lemma: e
                        .order_lemma
                        .iter()
                        .map(|s| SampleRecord {
                            samples: s.samples,
                            seed: s.seed,
                            passed: s.passed(),
                            witness: s.witness.as_ref().map(fmt),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReverseRecord {
    pub n: u32,
    pub passed: bool,
    pub checked: usize,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleRecord {
    pub samples: usize,
    pub seed: u64,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryRecord {
    pub id: String,
    pub generators: Vec<String>,
    pub report: ReportRecord,
    pub reverse: Vec<ReverseRecord>,
    pub order_lemma: Vec<SampleRecord>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BundleRecord {
    pub certificate: CertificateRecord,
    pub aggregate: u32,
    pub exhausted: bool,
    pub operator_order: u32,
    pub effective_bound: Option<u32>,
    pub seed: u64,
    pub entries: Vec<EntryRecord>,
}

/// Verifies the operators describe `R`, then runs the constant search,
/// the reverse containment and the order lemma for every ideal of the
/// family. The search is skipped when the operators are refuted.
pub fn artin_rees_experiment(
    family: &[(String, IdealHandle)],
    ops: &OperatorSet,
    ring: &RingSpec,
    params: &ExperimentParams,
    schedule: &Schedule<'_>,
) -> Result<ExperimentBundle> {
    check_modulus(ops, ring)?;
    let bounds = params.bounds;
    let certificate = verify_noetherian_ops(ring.defining_ideal(), ops, bounds.degree)?;
    let operator_order = ops.max_order();
    let mut bundle = ExperimentBundle {
        certificate,
        entries: Vec::new(),
        aggregate: 0,
        exhausted: false,
        operator_order,
        effective_bound: params.filtration_length.map(|k| k * operator_order),
        seed: params.seed,
    };
    if bundle.certificate.status == CertificateStatus::Refuted {
        return Ok(bundle);
    }
    bundle.entries = family
        .par_iter()
        .enumerate()
        .map(|(idx, (id, j))| {
            let report = find_min_c_with(j, ops, ring, bounds, schedule)?;
            let reverse = (0..=bounds.n_max)
                .map(|n| check_reverse(j, ops, ring, n, bounds.degree))
                .collect::<Result<Vec<_>>>()?;
            let image = ring.image_in_reduced(j);
            let order_lemma = ops
                .ops()
                .iter()
                .enumerate()
                .map(|(k, op)| {
                    let seed = params.seed.wrapping_add((idx * ops.len() + k) as u64);
                    check_order_lemma(op, j, &image, 1, params.samples, seed)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(FamilyEntry {
                id: id.clone(),
                ideal: j.clone(),
                report,
                reverse,
                order_lemma,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    bundle.aggregate = bundle
        .entries
        .iter()
        .map(|e| e.report.max_constant())
        .max()
        .unwrap_or(0);
    bundle.exhausted = bundle.entries.iter().any(|e| e.report.exhausted());
    Ok(bundle)
}
