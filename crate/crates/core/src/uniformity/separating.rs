use std::collections::HashMap;

use crate::diffops::{DiffOp, SampledCheck};
use crate::error::{Error, Result};
use crate::groebner::{IdealHandle, RingSpec};
use crate::linalg::{kernel_rational, SparseVec};
use crate::poly::{monomials_up_to, Monomial, Polynomial, Rational, RationalFunction};
use crate::sample;

/// Number of random pairs used for the linearity check.
pub const LINEARITY_SAMPLES: usize = 50;

#[derive(Clone, Debug)]
pub struct SeparatingOperatorResult {
    /// Reduces modulo the radical of the ring.
    pub delta: DiffOp,
    pub order: u32,
    /// Coefficient degree bound at which `delta` was found.
    pub coeff_degree: u32,
    /// `δ(h)/ψ(h)` in the fraction field of `R/p`.
    pub d_value: RationalFunction,
    /// The images `ψ(h)` of the generators of `b`, as supplied.
    pub psi: Vec<Polynomial>,
    /// `δ(f·g) ≡ f·δ(g) mod p` on random `f ∈ P`, `g ∈ b`.
    pub linearity: SampledCheck,
}

/// Searches a differential operator `δ: R → R_red` of minimal order that
/// kills `a` but not `b` modulo `p`, with polynomial coefficients of degree
/// at most `coeff_deg`. `psi` lists the images in `R/p` of the generators
/// of `b` under a claimed embedding of `b/a`. Returns `None` when no
/// operator exists within the bounds.
#[allow(clippy::too_many_arguments)]
pub fn separating_operator(
    a: &IdealHandle,
    b: &IdealHandle,
    ring: &RingSpec,
    p: &IdealHandle,
    psi: &[Polynomial],
    t_max: u32,
    coeff_deg: u32,
    seed: u64,
) -> Result<Option<SeparatingOperatorResult>> {
    let n = ring.nvars();
    for i in [a, b, p] {
        if i.nvars() != n {
            return Err(Error::VariableMismatch {
                expected: n,
                found: i.nvars(),
            });
        }
    }
    if psi.len() != b.generators().len() {
        return Err(Error::InvalidArgument(format!(
            "{} embedding images given for {} generators",
            psi.len(),
            b.generators().len()
        )));
    }
    let a_lift = ring.lift(a);
    let b_lift = ring.lift(b);
    if !b_lift.contains_ideal(&a_lift) || a_lift.contains_ideal(&b_lift) {
        return Err(Error::InvalidArgument(
            "expected a strictly smaller than b".into(),
        ));
    }
    if !ring.minimal_primes().is_empty() && !ring.is_minimal_prime(p) {
        return Err(Error::InvalidArgument(
            "p is not a declared minimal prime".into(),
        ));
    }
    if !p.contains_ideal(ring.radical()) {
        return Err(Error::InvalidArgument(
            "p does not contain the radical".into(),
        ));
    }

    for t in 0..=t_max {
        for cd in 0..=coeff_deg {
            if let Some(delta) = search(&a_lift, b, ring, p, t, cd)? {
                return finish(delta, t, cd, b, p, psi, seed).map(Some);
            }
        }
    }
    Ok(None)
}

/// First kernel vector of the killing conditions that separates `b` modulo `p`.
fn search(
    a: &IdealHandle,
    b: &IdealHandle,
    ring: &RingSpec,
    p: &IdealHandle,
    t: u32,
    cd: u32,
) -> Result<Option<DiffOp>> {
    let n = ring.nvars();
    let alphas = monomials_up_to(n, t);
    let coeffs = monomials_up_to(n, cd);
    let unknowns: Vec<DiffOp> = alphas
        .iter()
        .flat_map(|alpha| coeffs.iter().map(move |mu| (alpha, mu)))
        .map(|(alpha, mu)| {
            DiffOp::new(n, [(Polynomial::monomial(mu.clone()), alpha.clone())], None)
        })
        .collect::<Result<_>>()?;
    let shifts = monomials_up_to(n, t);
    let mut conditions: Vec<Polynomial> = Vec::new();
    for g in a.generators() {
        for beta in &shifts {
            conditions.push(g.mul_monomial(beta));
        }
    }
    let mut rows: HashMap<(usize, Monomial), usize> = HashMap::new();
    let mut images: Vec<SparseVec<Rational>> = Vec::with_capacity(unknowns.len());
    for op in &unknowns {
        let mut col = SparseVec::new();
        for (k, h) in conditions.iter().enumerate() {
            let v = ring.radical().normal_form(&op.apply(h)?);
            for (m, c) in v.terms() {
                let next = rows.len();
                let r = *rows.entry((k, m.clone())).or_insert(next);
                col.insert(r, c.clone());
            }
        }
        images.push(col);
    }
    for v in kernel_rational(&images) {
        let mut delta = DiffOp::new(n, Vec::<(Polynomial, Monomial)>::new(), None)?;
        for (&k, c) in &v {
            delta = delta.add(&unknowns[k].scale(c));
        }
        let delta = delta.primitive().with_modulus(ring.radical().clone());
        for h in b.generators() {
            if !p.contains(&delta.apply(h)?) {
                return Ok(Some(delta));
            }
        }
    }
    Ok(None)
}

fn finish(
    delta: DiffOp,
    order: u32,
    coeff_degree: u32,
    b: &IdealHandle,
    p: &IdealHandle,
    psi: &[Polynomial],
    seed: u64,
) -> Result<SeparatingOperatorResult> {
    let n = delta.nvars();
    let mut rng = sample::rng(seed);
    let mut witness = None;
    for _ in 0..LINEARITY_SAMPLES {
        let f = sample::random_polynomial(&mut rng, n, 2, 3);
        let g = sample::random_combination(&mut rng, b.generators(), n, 2);
        let lhs = delta.apply(&(&f * &g))?;
        let rhs = &f * &delta.apply(&g)?;
        if !p.contains(&(&lhs - &rhs)) {
            witness = Some(&f * &g);
            break;
        }
    }
    let linearity = SampledCheck {
        samples: LINEARITY_SAMPLES,
        seed,
        witness,
    };

    let values: Vec<Polynomial> = b
        .generators()
        .iter()
        .map(|h| delta.apply(h).map(|v| p.normal_form(&v)))
        .collect::<Result<_>>()?;
    let images: Vec<Polynomial> = psi.iter().map(|q| p.normal_form(q)).collect();
    let base = (0..values.len())
        .find(|&k| !values[k].is_zero() && !images[k].is_zero())
        .ok_or_else(|| {
            Error::InconsistentEmbedding(
                "every generator not killed modulo p has image zero".into(),
            )
        })?;
    for k in 0..values.len() {
        let cross = &(&values[k] * &images[base]) - &(&images[k] * &values[base]);
        if !p.contains(&cross) {
            return Err(Error::InconsistentEmbedding(format!(
                "the ratio of operator value to image differs between generators {base} and {k}"
            )));
        }
    }
    let d_value = RationalFunction::new(values[base].clone(), images[base].clone())?.reduce();
    Ok(SeparatingOperatorResult {
        delta,
        order,
        coeff_degree,
        d_value,
        psi: psi.to_vec(),
        linearity,
    })
}
