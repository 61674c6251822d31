//! Noetherian operators: Macaulay dual spaces at rational points, the
//! analogous computation over the fraction field of a set of independent
//! variables, merging per-component operator sets, and verification of a
//! claimed operator set against an ideal.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::diffops::{DiffOp, OperatorSet};
use crate::error::{Error, Result};
use crate::groebner::{standard_monomials_in, IdealHandle, RingSpec};
use crate::linalg::{kernel, EchelonBasis, FieldElem, SparseVec};
use crate::poly::{
    exact_div, gcd, lcm, monomials_up_to, BlockKind, Monomial, MonomialOrder, Polynomial, Rational,
    RationalFunction,
};
use crate::uniformity::TruncatedSubspace;

/// A claimed `p`-primary ideal `Q` with variables `u` independent modulo `p`.
#[derive(Clone, Debug)]
pub struct PrimaryComponent {
    primary: IdealHandle,
    prime: IdealHandle,
    independent: Vec<usize>,
}

impl PrimaryComponent {
    /// Checks `Q ⊆ p` and `p ∩ Q[u] = 0`.
    pub fn new(
        primary: IdealHandle,
        prime: IdealHandle,
        mut independent: Vec<usize>,
    ) -> Result<Self> {
        let n = primary.nvars();
        if prime.nvars() != n {
            return Err(Error::VariableMismatch {
                expected: n,
                found: prime.nvars(),
            });
        }
        independent.sort_unstable();
        independent.dedup();
        if let Some(&v) = independent.iter().find(|&&v| v >= n) {
            return Err(Error::InvalidArgument(format!(
                "variable index {v} out of range"
            )));
        }
        if let Some(i) = primary.generators().iter().position(|g| !prime.contains(g)) {
            return Err(Error::PrimaryNotInPrime(i));
        }
        let comp = PrimaryComponent {
            primary,
            prime,
            independent,
        };
        if !comp.prime.eliminate(&comp.dependent()).is_zero_ideal() {
            return Err(Error::NotIndependent);
        }
        Ok(comp)
    }

    pub fn primary(&self) -> &IdealHandle {
        &self.primary
    }

    pub fn prime(&self) -> &IdealHandle {
        &self.prime
    }

    pub fn independent(&self) -> &[usize] {
        &self.independent
    }

    pub fn dependent(&self) -> Vec<usize> {
        (0..self.primary.nvars())
            .filter(|v| !self.independent.contains(v))
            .collect()
    }
}

fn block_order(nvars: usize, dependent: &[usize]) -> MonomialOrder {
    MonomialOrder::block(
        nvars,
        dependent.to_vec(),
        BlockKind::Lex,
        BlockKind::Grevlex,
    )
}

/// Leading monomial in the dependent variables and its coefficient, a
/// polynomial in the remaining variables.
fn leading_in(g: &Polynomial, ord: &MonomialOrder, dependent: &[usize]) -> (Monomial, Polynomial) {
    let lm = g
        .leading_monomial(ord)
        .expect("nonzero")
        .restrict(dependent);
    let mut coef = Polynomial::zero(g.nvars());
    for (m, c) in g.terms() {
        if m.restrict(dependent) == lm {
            coef.add_term(lm.quotient_of(m).expect("same dependent part"), c.clone());
        }
    }
    (lm, coef)
}

/// Product of the leading coefficients (in the independent variables) of a
/// block-order Gröbner basis.
fn leading_coefficient_product(
    basis: &[Polynomial],
    ord: &MonomialOrder,
    dependent: &[usize],
) -> Polynomial {
    let n = basis.first().map(|g| g.nvars()).unwrap_or(0);
    let mut h = Polynomial::one(n);
    for g in basis {
        let (_, c) = leading_in(g, ord, dependent);
        if !c.is_constant() {
            h = &h * &c;
        }
    }
    h
}

/// Solves `p` for the dependent variables over the fraction field of the
/// others. Entry `v` of the result is the image of variable `v`; independent
/// variables map to themselves.
pub fn rational_point(p: &IdealHandle, dependent: &[usize]) -> Result<Vec<RationalFunction>> {
    let n = p.nvars();
    let ord = block_order(n, dependent);
    let ideal = IdealHandle::with_order(n, p.generators().to_vec(), ord.clone());
    let gb = ideal.groebner_basis();
    if gb.iter().any(|g| dependent.iter().all(|&v| !g.uses_var(v))) {
        return Err(Error::NotIndependent);
    }
    let mut images: Vec<RationalFunction> = (0..n)
        .map(|v| RationalFunction::from_polynomial(Polynomial::var(n, v)))
        .collect();
    // lex on the dependent block: solve from the smallest variable upward
    for &j in dependent.iter().rev() {
        let xj = Monomial::var(n, j);
        let linear = gb.iter().find(|g| leading_in(g, &ord, dependent).0 == xj);
        let Some(g) = linear else {
            return Err(Error::NonRationalPoint(format!(
                "no generator is linear in variable {j} over the fraction field"
            )));
        };
        let (_, a) = leading_in(g, &ord, dependent);
        let rest = g - &(&a * &Polynomial::var(n, j));
        let value = RationalFunction::substitute(&rest, &images)?
            .neg()
            .div(&RationalFunction::from_polynomial(a))?;
        images[j] = value.reduce();
    }
    for g in gb {
        if !RationalFunction::substitute(g, &images)?.is_zero() {
            return Err(Error::NonRationalPoint(
                "the prime does not vanish at the solved point".into(),
            ));
        }
    }
    Ok(images)
}

/// Standard monomials of `Q·F[dependent]` over the fraction field `F` of
/// the other variables, from a block-order Gröbner basis.
pub fn fraction_field_standard_monomials(
    q: &IdealHandle,
    dependent: &[usize],
) -> Result<Vec<Monomial>> {
    let n = q.nvars();
    let ord = block_order(n, dependent);
    let ideal = IdealHandle::with_order(n, q.generators().to_vec(), ord.clone());
    let lms: Vec<Monomial> = ideal
        .groebner_basis()
        .iter()
        .map(|g| leading_in(g, &ord, dependent).0)
        .collect();
    let mut out = standard_monomials_in(&lms, dependent, n)?;
    out.sort_by(|a, b| MonomialOrder::Grevlex.cmp(a, b));
    Ok(out)
}

fn binomial(n: u32, k: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc = acc * Rational::from_integer((n - i).into()) / Rational::from_integer((i + 1).into());
    }
    acc
}

fn power<T: FieldElem>(x: &T, e: u32) -> T {
    let mut acc = x.one_like();
    for _ in 0..e {
        acc = acc.mul(x).normalized();
    }
    acc
}

/// `g` in coordinates `z = x_dep − point`, as a polynomial in `k = |dep|`
/// variables with coefficients in the field `T`.
fn shift<T: FieldElem>(
    g: &Polynomial,
    dependent: &[usize],
    point: &[T],
    lift: &impl Fn(&Polynomial) -> T,
) -> BTreeMap<Monomial, T> {
    let mut grouped: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
    let n = g.nvars();
    let others: Vec<usize> = (0..n).filter(|v| !dependent.contains(v)).collect();
    for (m, c) in g.terms() {
        let key = Monomial::from_exponents(dependent.iter().map(|&v| m.exponent(v)).collect());
        grouped
            .entry(key)
            .or_insert_with(|| Polynomial::zero(n))
            .add_term(m.restrict(&others), c.clone());
    }
    let mut out: BTreeMap<Monomial, T> = BTreeMap::new();
    for (key, coef) in grouped {
        let lc = lift(&coef);
        if lc.is_zero() {
            continue;
        }
        for i in key.divisors() {
            let mut factor = lc.clone();
            for (t, (&e, &ie)) in key.exponents().iter().zip(i.exponents()).enumerate() {
                if e > ie {
                    let b = lc.embed_rational(&binomial(e, ie));
                    factor = factor.mul(&power(&point[t], e - ie)).mul(&b).normalized();
                }
            }
            match out.remove(&i) {
                Some(prev) => {
                    let s = prev.add(&factor).normalized();
                    if !s.is_zero() {
                        out.insert(i, s);
                    }
                }
                None => {
                    if !factor.is_zero() {
                        out.insert(i, factor);
                    }
                }
            }
        }
    }
    out
}

/// Local dual space at the origin of the shifted generators: functionals
/// `f ↦ Σ λ_γ [z^γ] f` killing the ideal, computed degree by degree until
/// their number reaches `colength`.
fn local_dual<T: FieldElem>(
    gens: &[BTreeMap<Monomial, T>],
    k: usize,
    colength: usize,
    unit: &T,
) -> Result<Vec<BTreeMap<Monomial, T>>> {
    let mut previous: Option<usize> = None;
    for t in 0..=colength as u32 {
        let mut cols = monomials_up_to(k, t);
        cols.sort_by(|a, b| MonomialOrder::Grevlex.cmp(b, a));
        let index: HashMap<&Monomial, usize> =
            cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut images: Vec<SparseVec<T>> = vec![SparseVec::new(); cols.len()];
        let shifts = monomials_up_to(k, t);
        let mut row = 0;
        for g in gens {
            for beta in &shifts {
                let mut used = false;
                for (m, c) in g {
                    let mb = m.mul(beta);
                    if mb.degree() <= t {
                        images[index[&mb]].insert(row, c.clone());
                        used = true;
                    }
                }
                if used {
                    row += 1;
                }
            }
        }
        let basis = EchelonBasis::from_vectors(kernel(&images, unit));
        let rank = basis.rank();
        if rank == colength {
            let mut rows = basis.into_rows();
            rows.reverse();
            return Ok(rows
                .into_iter()
                .map(|r| r.into_iter().map(|(c, v)| (cols[c].clone(), v)).collect())
                .collect());
        }
        // the truncated dual stops growing only once it is complete
        if rank > colength || previous == Some(rank) {
            return Err(Error::NotPrimaryAtPoint {
                found: rank,
                colength,
            });
        }
        previous = Some(rank);
    }
    Err(Error::NotPrimaryAtPoint {
        found: previous.unwrap_or(0),
        colength,
    })
}

fn embed(gamma: &Monomial, dependent: &[usize], nvars: usize) -> Monomial {
    let mut e = vec![0; nvars];
    for (k, &v) in dependent.iter().enumerate() {
        e[v] = gamma.exponent(k);
    }
    Monomial::from_exponents(e)
}

/// Macaulay dual space of a zero-dimensional ideal primary to the maximal
/// ideal of `point`: constant-coefficient operators, followed by reduction
/// modulo that maximal ideal, whose common kernel is `Q`.
pub fn dual_space(q: &IdealHandle, point: &[Rational]) -> Result<Vec<DiffOp>> {
    let n = q.nvars();
    if point.len() != n {
        return Err(Error::VariableMismatch {
            expected: n,
            found: point.len(),
        });
    }
    for (i, g) in q.generators().iter().enumerate() {
        if !Zero::is_zero(&g.evaluate(point)?) {
            return Err(Error::PointNotRoot(i));
        }
    }
    let colength = q.colength()?;
    let dependent: Vec<usize> = (0..n).collect();
    let shifted: Vec<_> = q
        .generators()
        .iter()
        .map(|g| shift(g, &dependent, point, &|c: &Polynomial| c.constant_term()))
        .collect();
    let functionals = local_dual(&shifted, n, colength, &Rational::one())?;
    let maximal = IdealHandle::new(
        n,
        (0..n)
            .map(|v| &Polynomial::var(n, v) - &Polynomial::constant(n, point[v].clone()))
            .collect(),
    );
    functionals
        .into_iter()
        .map(|f| {
            let terms = f.into_iter().map(|(gamma, l)| {
                let c = l / Rational::from_integer(gamma.factorial());
                (Polynomial::constant(n, c), embed(&gamma, &dependent, n))
            });
            Ok(DiffOp::new(n, terms, None)?
                .primitive()
                .with_modulus(maximal.clone()))
        })
        .collect()
}

/// Dual space of a primary component over `F = Q(u)` at the `F`-rational
/// point of its prime.
#[derive(Clone, Debug)]
pub struct FractionFieldDual {
    nvars: usize,
    dependent: Vec<usize>,
    point: Vec<RationalFunction>,
    /// Operator coefficients `λ_γ / γ!` keyed by `γ` (embedded in all variables).
    functionals: Vec<BTreeMap<Monomial, RationalFunction>>,
}

impl FractionFieldDual {
    pub fn compute(comp: &PrimaryComponent) -> Result<Self> {
        let n = comp.primary().nvars();
        let dependent = comp.dependent();
        let point = rational_point(comp.prime(), &dependent)?;
        let colength = fraction_field_standard_monomials(comp.primary(), &dependent)?.len();
        let dep_point: Vec<RationalFunction> =
            dependent.iter().map(|&v| point[v].clone()).collect();
        let lift = |c: &Polynomial| RationalFunction::from_polynomial(c.clone());
        let shifted: Vec<_> = comp
            .primary()
            .generators()
            .iter()
            .map(|g| shift(g, &dependent, &dep_point, &lift))
            .collect();
        let raw = local_dual(
            &shifted,
            dependent.len(),
            colength,
            &RationalFunction::one(n),
        )?;
        let functionals = raw
            .into_iter()
            .map(|f| {
                f.into_iter()
                    .map(|(gamma, l)| {
                        let c = l
                            .scale(&Rational::new(1.into(), gamma.factorial()))
                            .reduce();
                        (embed(&gamma, &dependent, n), c)
                    })
                    .collect()
            })
            .collect();
        Ok(FractionFieldDual {
            nvars: n,
            dependent,
            point,
            functionals,
        })
    }

    pub fn len(&self) -> usize {
        self.functionals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functionals.is_empty()
    }

    pub fn point(&self) -> &[RationalFunction] {
        &self.point
    }

    pub fn dependent(&self) -> &[usize] {
        &self.dependent
    }

    /// Functional `i` applied to `f`: `Σ c_γ ∂^γ f` evaluated at the point.
    pub fn evaluate(&self, i: usize, f: &Polynomial) -> Result<RationalFunction> {
        let mut acc = RationalFunction::zero(self.nvars);
        for (gamma, c) in &self.functionals[i] {
            let d = f.derivative_multi(gamma);
            if !d.is_zero() {
                acc = acc.add(&c.mul(&RationalFunction::substitute(&d, &self.point)?));
            }
        }
        Ok(acc.reduce())
    }

    /// Operators with polynomial coefficients: each functional is multiplied
    /// by the lcm of its denominators and divided by the gcd of the result.
    pub fn cleared_operators(&self, modulus: &IdealHandle) -> Result<Vec<DiffOp>> {
        let n = self.nvars;
        let mut out = Vec::with_capacity(self.functionals.len());
        for f in &self.functionals {
            let coefs: Vec<&RationalFunction> = f.values().collect();
            let polys = clear_denominators(&coefs);
            let terms = f.keys().cloned().zip(polys).map(|(gamma, c)| (c, gamma));
            out.push(
                DiffOp::new(n, terms, None)?
                    .primitive()
                    .with_modulus(modulus.clone()),
            );
        }
        Ok(out)
    }
}

/// Polynomials proportional to the given fractions, with no common factor.
fn clear_denominators(values: &[&RationalFunction]) -> Vec<Polynomial> {
    let n = values.first().map(|v| v.nvars()).unwrap_or(0);
    let mut l = Polynomial::one(n);
    for v in values {
        l = lcm(&l, v.denominator());
    }
    let polys: Vec<Polynomial> = values
        .iter()
        .map(|v| exact_div(&(v.numerator() * &l), v.denominator()).expect("lcm is a multiple"))
        .collect();
    let mut g = Polynomial::zero(n);
    for p in &polys {
        g = gcd(&g, p);
    }
    if g.is_zero() || g.is_constant() {
        return polys;
    }
    polys
        .iter()
        .map(|p| exact_div(p, &g).expect("gcd divides"))
        .collect()
}

/// Noetherian operators of a primary component, with coefficients cleared
/// to polynomials and outputs reduced modulo its prime.
pub fn noetherian_ops_primary(comp: &PrimaryComponent) -> Result<OperatorSet> {
    let dual = FractionFieldDual::compute(comp)?;
    OperatorSet::new(dual.cleared_operators(comp.prime())?, comp.prime().clone())
}

/// Merges per-component operator sets into one set whose common kernel is
/// `target = ∩ Q_i`.
///
/// Outputs are reduced modulo `M = ∩ p_i` (the ring's radical when the
/// two agree). An operator of component `i` is multiplied by some
/// `s_i ∈ ∩_{p_j ≠ p_i} p_j` outside `p_i`, so that `s_i·δ(f) ∈ M` holds
/// exactly when `δ(f) ∈ p_i`.
pub fn combine_components(
    comps: &[(PrimaryComponent, OperatorSet)],
    target: &IdealHandle,
    ring: &RingSpec,
) -> Result<OperatorSet> {
    let n = ring.nvars();
    if comps.is_empty() {
        return Err(Error::InvalidArgument("no components".into()));
    }
    for (c, ops) in comps {
        if c.primary().nvars() != n || ops.nvars() != n || target.nvars() != n {
            return Err(Error::VariableMismatch {
                expected: n,
                found: c.primary().nvars(),
            });
        }
        if !ops.modulus().equals(c.prime()) {
            return Err(Error::ModulusMismatch(
                "component operators must reduce modulo the component prime".into(),
            ));
        }
    }
    let mut inter = comps[0].0.primary().clone();
    for (c, _) in &comps[1..] {
        inter = inter.intersect(c.primary())?;
    }
    if let Some(g) = inter.missing_generator(target) {
        return Err(Error::IntersectionMismatch(format!(
            "generator {} of the target is not in the intersection of the components",
            ring.format(g)
        )));
    }
    if let Some(g) = target.missing_generator(&IdealHandle::new(n, inter.groebner_basis().to_vec()))
    {
        return Err(Error::IntersectionMismatch(format!(
            "{} lies in every component but not in the target",
            ring.format(g)
        )));
    }

    let mut primes: Vec<IdealHandle> = Vec::new();
    for (c, _) in comps {
        if !primes.iter().any(|p| p.equals(c.prime())) {
            primes.push(c.prime().clone());
        }
    }
    let mut modulus = primes[0].clone();
    for p in &primes[1..] {
        modulus = modulus.intersect(p)?;
    }
    if modulus.equals(ring.radical()) {
        modulus = ring.radical().clone();
    }

    let mut ops = Vec::new();
    for (c, set) in comps {
        let mut s = Polynomial::one(n);
        for p in primes.iter().filter(|p| !p.equals(c.prime())) {
            let g = p
                .generators()
                .iter()
                .find(|g| !c.prime().contains(g))
                .ok_or_else(|| {
                    Error::InvalidArgument("component primes must be pairwise incomparable".into())
                })?;
            s = &s * g;
        }
        for op in set.ops() {
            ops.push(op.without_modulus().mul_left(&s));
        }
    }
    OperatorSet::new(ops, modulus)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateStatus {
    Exact,
    VerifiedUpToDegree,
    Refuted,
}

/// Which half of the description a refutation witness breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessSide {
    /// The witness lies in the ideal but some operator does not kill it.
    InIdealNotKilled,
    /// Every operator kills the witness but it is not in the ideal.
    KilledNotInIdeal,
}

#[derive(Clone, Debug)]
pub struct NoetherianCertificate {
    pub ops: OperatorSet,
    pub status: CertificateStatus,
    pub degree_bound: u32,
    pub witness: Option<(Polynomial, WitnessSide)>,
}

/// Text form of a certificate, for JSON output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateRecord {
    pub status: CertificateStatus,
    pub degree_bound: u32,
    pub operators: Vec<String>,
    pub modulus: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_side: Option<WitnessSide>,
}

impl NoetherianCertificate {
    pub fn record<S: AsRef<str>>(&self, vars: &[S]) -> CertificateRecord {
        CertificateRecord {
            status: self.status,
            degree_bound: self.degree_bound,
            operators: self.ops.ops().iter().map(|o| o.format(vars)).collect(),
            modulus: self
                .ops
                .modulus()
                .generators()
                .iter()
                .map(|g| crate::poly::format_polynomial(g, vars))
                .collect(),
            witness: self
                .witness
                .as_ref()
                .map(|(w, _)| crate::poly::format_polynomial(w, vars)),
            witness_side: self.witness.as_ref().map(|(_, s)| *s),
        }
    }
}

enum Decision {
    Exact,
    Refuted(Polynomial),
}

/// First `x^β·g` (generator `g` of `a`, `|β| ≤ order`) that some operator
/// does not kill. Checking these suffices: `h ↦ δ(h·g)` has order at most
/// `order(δ)` and is determined by its values on such monomials.
fn first_unkilled_multiple(a: &IdealHandle, ops: &OperatorSet) -> Result<Option<Polynomial>> {
    let n = a.nvars();
    for op in ops.ops() {
        for beta in monomials_up_to(n, op.order()) {
            for g in a.generators() {
                let h = g.mul_monomial(&beta);
                if !op.apply(&h)?.is_zero() {
                    return Ok(Some(h));
                }
            }
        }
    }
    Ok(None)
}

/// Subsets of `vars` from largest to smallest, lexicographic within a size.
fn subsets_by_size(vars: &[usize]) -> Vec<Vec<usize>> {
    let mut all: Vec<Vec<usize>> = (0u32..(1 << vars.len()))
        .map(|mask| {
            vars.iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &v)| v)
                .collect()
        })
        .collect();
    all.sort_by(|a: &Vec<usize>, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    all
}

/// Decides the description exactly when the modulus is a prime with a
/// rational point over `Q(u)` for some `u` the operators do not
/// differentiate. Assumes the operators already kill `a`.
fn decide_exactly(a: &IdealHandle, ops: &OperatorSet) -> Result<Option<Decision>> {
    let n = a.nvars();
    let modulus = ops.modulus();
    let free: Vec<usize> = (0..n)
        .filter(|&v| !ops.ops().iter().any(|o| o.differentiates(v)))
        .collect();
    for u in subsets_by_size(&free) {
        let dependent: Vec<usize> = (0..n).filter(|v| !u.contains(v)).collect();
        let Ok(point) = rational_point(modulus, &dependent) else {
            continue;
        };
        let ord = block_order(n, &dependent);
        // the modulus must be contracted from its extension to F[x]
        let pb = IdealHandle::with_order(n, modulus.generators().to_vec(), ord.clone());
        let hp = leading_coefficient_product(pb.groebner_basis(), &ord, &dependent);
        if !hp.is_constant() && !modulus.saturate(&hp)?.equals(modulus) {
            continue;
        }
        let Ok(standard) = fraction_field_standard_monomials(a, &dependent) else {
            continue;
        };
        let unit = RationalFunction::one(n);
        let mut images: Vec<SparseVec<RationalFunction>> = Vec::with_capacity(standard.len());
        for s in &standard {
            let mut col = SparseVec::new();
            for (i, op) in ops.ops().iter().enumerate() {
                let v = op
                    .without_modulus()
                    .apply(&Polynomial::monomial(s.clone()))?;
                let e = RationalFunction::substitute(&v, &point)?;
                if !e.is_zero() {
                    col.insert(i, e);
                }
            }
            images.push(col);
        }
        let null = kernel(&images, &unit);
        if let Some(v) = null.first() {
            let coefs: Vec<&RationalFunction> = v.values().collect();
            let polys = clear_denominators(&coefs);
            let mut f = Polynomial::zero(n);
            for (&k, c) in v.keys().zip(&polys) {
                f = &f + &c.mul_monomial(&standard[k]);
            }
            let f = f.primitive();
            if !a.contains(&f) && ops.kills(&f)? {
                return Ok(Some(Decision::Refuted(f)));
            }
            continue;
        }
        let ab = IdealHandle::with_order(n, a.generators().to_vec(), ord.clone());
        let ha = leading_coefficient_product(ab.groebner_basis(), &ord, &dependent);
        if !ha.is_constant() {
            let sat = a.saturate(&ha)?;
            if let Some(w) = a.missing_generator(&sat) {
                let w = w.clone();
                if ops.kills(&w)? {
                    return Ok(Some(Decision::Refuted(w)));
                }
                continue;
            }
        }
        return Ok(Some(Decision::Exact));
    }
    Ok(None)
}

/// Checks whether `ops` describes `a`, i.e. `a = {f : δ(f) ≡ 0 for all δ}`.
///
/// Containment of `a` in the common kernel is always decided exactly. The
/// reverse containment is decided exactly when the modulus is a prime with
/// a rational point over the fraction field of variables the operators do
/// not differentiate; otherwise it is checked on polynomials of degree at
/// most `degree`.
pub fn verify_noetherian_ops(
    a: &IdealHandle,
    ops: &OperatorSet,
    degree: u32,
) -> Result<NoetherianCertificate> {
    let n = a.nvars();
    if ops.nvars() != n {
        return Err(Error::VariableMismatch {
            expected: n,
            found: ops.nvars(),
        });
    }
    let cert = |status, witness| NoetherianCertificate {
        ops: ops.clone(),
        status,
        degree_bound: degree,
        witness,
    };
    if let Some(h) = first_unkilled_multiple(a, ops)? {
        return Ok(cert(
            CertificateStatus::Refuted,
            Some((h, WitnessSide::InIdealNotKilled)),
        ));
    }
    match decide_exactly(a, ops)? {
        Some(Decision::Exact) => return Ok(cert(CertificateStatus::Exact, None)),
        Some(Decision::Refuted(f)) => {
            return Ok(cert(
                CertificateStatus::Refuted,
                Some((f, WitnessSide::KilledNotInIdeal)),
            ));
        }
        None => {}
    }
    let k = TruncatedSubspace::operator_kernel(ops.ops(), ops.modulus(), degree)?;
    for f in k.basis() {
        if !a.contains(&f) {
            return Ok(cert(
                CertificateStatus::Refuted,
                Some((f, WitnessSide::KilledNotInIdeal)),
            ));
        }
    }
    Ok(cert(CertificateStatus::VerifiedUpToDegree, None))
}
