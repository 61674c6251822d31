//! Linear differential operators with polynomial coefficients, optionally
//! followed by reduction modulo an ideal.
//!
//! An operator is written in normal order, coefficients to the left:
//! `y*dx*dy + 1` is the map `f ↦ y ∂x∂y f + f`. `∂^α` is plain iterated
//! differentiation, so `dx^2` sends `x^2` to `2`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::groebner::IdealHandle;
use crate::poly::{
    format_polynomial, parse_polynomial, shift_position, Monomial, Polynomial, Rational,
};
use crate::sample;

/// `Σ c_α ∂^α`, with outputs reduced modulo `modulus` when one is set.
#[derive(Clone)]
pub struct DiffOp {
    nvars: usize,
    terms: BTreeMap<Monomial, Polynomial>,
    modulus: Option<IdealHandle>,
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

impl DiffOp {
    /// Collects `(coefficient, α)` pairs; coefficients are reduced modulo
    /// `modulus` and zero terms dropped.
    pub fn new(
        nvars: usize,
        terms: impl IntoIterator<Item = (Polynomial, Monomial)>,
        modulus: Option<IdealHandle>,
    ) -> Result<Self> {
        let mut map: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
        for (c, alpha) in terms {
            if c.nvars() != nvars || alpha.nvars() != nvars {
                return Err(Error::VariableMismatch {
                    expected: nvars,
                    found: c.nvars().max(alpha.nvars()),
                });
            }
            let slot = map.entry(alpha).or_insert_with(|| Polynomial::zero(nvars));
            *slot = &*slot + &c;
        }
        if let Some(m) = &modulus {
            if m.nvars() != nvars {
                return Err(Error::VariableMismatch {
                    expected: nvars,
                    found: m.nvars(),
                });
            }
        }
        Ok(Self::normalized(nvars, map, modulus))
    }

    fn normalized(
        nvars: usize,
        terms: BTreeMap<Monomial, Polynomial>,
        modulus: Option<IdealHandle>,
    ) -> Self {
        let terms = terms
            .into_iter()
            .map(|(a, c)| match &modulus {
                Some(m) => (a, m.normal_form(&c)),
                None => (a, c),
            })
            .filter(|(_, c)| !c.is_zero())
            .collect();
        DiffOp {
            nvars,
            terms,
            modulus,
        }
    }

    pub fn identity(nvars: usize) -> Self {
        Self::multiplication(Polynomial::one(nvars))
    }

    pub fn multiplication(f: Polynomial) -> Self {
        let n = f.nvars();
        Self::normalized(n, BTreeMap::from([(Monomial::one(n), f)]), None)
    }

    /// `∂^alpha` with coefficient one.
    pub fn derivative(alpha: Monomial) -> Self {
        let n = alpha.nvars();
        Self::normalized(n, BTreeMap::from([(alpha, Polynomial::one(n))]), None)
    }

    pub fn partial(nvars: usize, var: usize) -> Self {
        Self::derivative(Monomial::var(nvars, var))
    }

    /// The same operator followed by reduction modulo `modulus`.
    pub fn with_modulus(&self, modulus: IdealHandle) -> Self {
        Self::normalized(self.nvars, self.terms.clone(), Some(modulus))
    }

    pub fn without_modulus(&self) -> Self {
        DiffOp {
            nvars: self.nvars,
            terms: self.terms.clone(),
            modulus: None,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn modulus(&self) -> Option<&IdealHandle> {
        self.modulus.as_ref()
    }

    /// `(α, c_α)` pairs with nonzero coefficients.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Polynomial)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, alpha: &Monomial) -> Polynomial {
        self.terms
            .get(alpha)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.nvars))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest `|α|` with a nonzero coefficient; 0 for the zero operator.
    pub fn order(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// True if some term differentiates with respect to `var`.
    pub fn differentiates(&self, var: usize) -> bool {
        self.terms.keys().any(|a| a.exponent(var) > 0)
    }

    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.nvars() != self.nvars {
            return Err(Error::VariableMismatch {
                expected: self.nvars,
                found: f.nvars(),
            });
        }
        let mut out = Polynomial::zero(self.nvars);
        for (alpha, c) in &self.terms {
            let d = f.derivative_multi(alpha);
            if !d.is_zero() {
                out = &out + &(c * &d);
            }
        }
        Ok(match &self.modulus {
            Some(m) => m.normal_form(&out),
            None => out,
        })
    }

    /// The operator `h ↦ δ(g·h)`.
    pub fn compose_multiplication(&self, g: &Polynomial) -> DiffOp {
        self.leibniz(g, true)
    }

    /// `[δ, f]`: the operator `h ↦ δ(f·h) − f·δ(h)`.
    pub fn bracket(&self, f: &Polynomial) -> DiffOp {
        self.leibniz(f, false)
    }

    fn leibniz(&self, g: &Polynomial, keep_plain: bool) -> DiffOp {
        let n = self.nvars;
        let mut map: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
        for (alpha, c) in &self.terms {
            for gamma in alpha.divisors() {
                if gamma.is_one() && !keep_plain {
                    continue;
                }
                let dg = g.derivative_multi(&gamma);
                if dg.is_zero() {
                    continue;
                }
                let mut b = BigInt::one();
                for (&a, &k) in alpha.exponents().iter().zip(gamma.exponents()) {
                    b *= binomial(a, k);
                }
                let rest = gamma.quotient_of(alpha).expect("gamma ≤ alpha");
                let term = (c * &dg).scale(&Rational::from_integer(b));
                let slot = map.entry(rest).or_insert_with(|| Polynomial::zero(n));
                *slot = &*slot + &term;
            }
        }
        Self::normalized(n, map, self.modulus.clone())
    }

    /// Left multiplication by `f`.
    pub fn mul_left(&self, f: &Polynomial) -> DiffOp {
        let terms = self.terms.iter().map(|(a, c)| (a.clone(), f * c)).collect();
        Self::normalized(self.nvars, terms, self.modulus.clone())
    }

    pub fn scale(&self, c: &Rational) -> DiffOp {
        let terms = self
            .terms
            .iter()
            .map(|(a, p)| (a.clone(), p.scale(c)))
            .collect();
        Self::normalized(self.nvars, terms, self.modulus.clone())
    }

    /// Sum; the modulus of `self` is kept.
    pub fn add(&self, other: &DiffOp) -> DiffOp {
        let mut terms = self.terms.clone();
        for (a, c) in &other.terms {
            let slot = terms
                .entry(a.clone())
                .or_insert_with(|| Polynomial::zero(self.nvars));
            *slot = &*slot + c;
        }
        Self::normalized(self.nvars, terms, self.modulus.clone())
    }

    /// Recovers the operator of order at most `d` from its values on all
    /// monomials of degree at most `d`, given as `value(x^β)`.
    pub fn reconstruct(
        nvars: usize,
        d: u32,
        modulus: Option<IdealHandle>,
        mut value: impl FnMut(&Monomial) -> Result<Polynomial>,
    ) -> Result<DiffOp> {
        let mut coeffs: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
        for beta in crate::poly::monomials_up_to(nvars, d) {
            // δ(x^β) = Σ_{α ≤ β} c_α · β!/(β−α)! · x^{β−α}
            let mut rest = value(&beta)?;
            for (alpha, c) in &coeffs {
                if let Some(q) = alpha.quotient_of(&beta) {
                    let f = Rational::from_integer(beta.factorial() / q.factorial());
                    rest = &rest - &(c * &Polynomial::monomial(q)).scale(&f);
                }
            }
            let inv = Rational::new(BigInt::one(), beta.factorial());
            let c = rest.scale(&inv);
            let c = match &modulus {
                Some(m) => m.normal_form(&c),
                None => c,
            };
            if !c.is_zero() {
                coeffs.insert(beta, c);
            }
        }
        Ok(Self::normalized(nvars, coeffs, modulus))
    }

    /// Reads an operator over `vars`; `d<var>` denotes `∂/∂var`.
    pub fn parse<S: AsRef<str>>(
        text: &str,
        vars: &[S],
        modulus: Option<IdealHandle>,
    ) -> Result<DiffOp> {
        let n = vars.len();
        let names = symbol_names(vars)?;
        let p = parse_polynomial(text, &names)?;
        let mut terms = Vec::new();
        for (m, c) in p.terms() {
            let e = m.exponents();
            let coeff = Polynomial::term(Monomial::from_exponents(e[..n].to_vec()), c.clone());
            terms.push((coeff, Monomial::from_exponents(e[n..].to_vec())));
        }
        DiffOp::new(n, terms, modulus)
    }

    /// Text form in the syntax accepted by [`DiffOp::parse`].
    pub fn format<S: AsRef<str>>(&self, vars: &[S]) -> String {
        let names = symbol_names(vars).unwrap_or_else(|_| {
            let mut v: Vec<String> = vars.iter().map(|s| s.as_ref().to_string()).collect();
            v.extend(vars.iter().map(|s| format!("D_{}", s.as_ref())));
            v
        });
        format_polynomial(&self.symbol(), &names)
    }

    /// `Σ c_α(x) ξ^α` in `2n` variables.
    fn symbol(&self) -> Polynomial {
        let n = self.nvars;
        let mut out = Polynomial::zero(2 * n);
        for (alpha, c) in &self.terms {
            for (m, k) in c.terms() {
                let mut e = m.exponents().to_vec();
                e.extend_from_slice(alpha.exponents());
                out.add_term(Monomial::from_exponents(e), k.clone());
            }
        }
        out
    }

    /// Scales so that all coefficients are integral with no common factor.
    pub fn primitive(&self) -> DiffOp {
        let s = self.symbol().primitive();
        let n = self.nvars;
        let mut terms: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
        for (m, c) in s.terms() {
            let e = m.exponents();
            let slot = terms
                .entry(Monomial::from_exponents(e[n..].to_vec()))
                .or_insert_with(|| Polynomial::zero(n));
            slot.add_term(Monomial::from_exponents(e[..n].to_vec()), c.clone());
        }
        Self::normalized(n, terms, self.modulus.clone())
    }
}

fn symbol_names<S: AsRef<str>>(vars: &[S]) -> Result<Vec<String>> {
    let mut names: Vec<String> = vars.iter().map(|s| s.as_ref().to_string()).collect();
    for v in vars {
        let d = format!("d{}", v.as_ref());
        if names.contains(&d) {
            return Err(Error::InvalidArgument(format!(
                "operator symbol `{d}` clashes with a ring variable"
            )));
        }
        names.push(d);
    }
    Ok(names)
}

impl PartialEq for DiffOp {
    fn eq(&self, other: &Self) -> bool {
        let same_mod = match (&self.modulus, &other.modulus) {
            (None, None) => true,
            (Some(a), Some(b)) => a.equals(b),
            _ => false,
        };
        self.nvars == other.nvars && same_mod && self.terms == other.terms
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.format(&vars))?;
        if let Some(m) = &self.modulus {
            write!(f, " mod {m:?}")?;
        }
        Ok(())
    }
}

/// Operators sharing one output modulus.
#[derive(Clone, Debug)]
pub struct OperatorSet {
    ops: Vec<DiffOp>,
    modulus: IdealHandle,
}

impl OperatorSet {
    /// Attaches `modulus` to every operator; an operator that already
    /// carries a different modulus is an error.
    pub fn new(ops: Vec<DiffOp>, modulus: IdealHandle) -> Result<Self> {
        let mut out = Vec::with_capacity(ops.len());
        for (i, op) in ops.into_iter().enumerate() {
            if op.nvars() != modulus.nvars() {
                return Err(Error::VariableMismatch {
                    expected: modulus.nvars(),
                    found: op.nvars(),
                });
            }
            if let Some(m) = op.modulus() {
                if !m.equals(&modulus) {
                    return Err(Error::ModulusMismatch(format!(
                        "operator {i} has a different modulus"
                    )));
                }
            }
            out.push(op.with_modulus(modulus.clone()));
        }
        Ok(OperatorSet { ops: out, modulus })
    }

    /// Parses `;`-separated operators.
    pub fn parse<S: AsRef<str>>(text: &str, vars: &[S], modulus: IdealHandle) -> Result<Self> {
        let mut ops = Vec::new();
        let mut offset = 0;
        for piece in text.split(';') {
            if !piece.trim().is_empty() {
                ops.push(DiffOp::parse(piece, vars, None).map_err(|e| shift_position(e, offset))?);
            }
            offset += piece.len() + 1;
        }
        Self::new(ops, modulus)
    }

    pub fn ops(&self) -> &[DiffOp] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn modulus(&self) -> &IdealHandle {
        &self.modulus
    }

    pub fn nvars(&self) -> usize {
        self.modulus.nvars()
    }

    /// Maximum order over the members (0 when empty).
    pub fn max_order(&self) -> u32 {
        self.ops.iter().map(DiffOp::order).max().unwrap_or(0)
    }

    pub fn format<S: AsRef<str>>(&self, vars: &[S]) -> String {
        self.ops
            .iter()
            .map(|o| o.format(vars))
            .collect::<Vec<_>>()
            .join("; ")
    }

    /// True if `f` is killed by every operator.
    pub fn kills(&self, f: &Polynomial) -> Result<bool> {
        for op in &self.ops {
            if !op.apply(f)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Outcome of a sampled check.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledCheck {
    pub samples: usize,
    pub seed: u64,
    /// First sample that failed, if any.
    pub witness: Option<Polynomial>,
}

impl SampledCheck {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Samples random `f ∈ J^{e+t}` (with `e` the order of `δ`) and checks
/// `δ(f) ∈ I^t + M`, where `M` is the operator's modulus.
pub fn check_order_lemma(
    delta: &DiffOp,
    j: &IdealHandle,
    i: &IdealHandle,
    t: u32,
    samples: usize,
    seed: u64,
) -> Result<SampledCheck> {
    let n = delta.nvars();
    if j.nvars() != n || i.nvars() != n {
        return Err(Error::VariableMismatch {
            expected: n,
            found: j.nvars().max(i.nvars()),
        });
    }
    let e = delta.order();
    let power = j.power(e + t);
    let mut target = i.power(t);
    if let Some(m) = delta.modulus() {
        target = target.sum(m)?;
    }
    let mut rng = sample::rng(seed);
    for _ in 0..samples {
        let f = sample::random_combination(&mut rng, power.generators(), n, 2);
        if !target.contains(&delta.apply(&f)?) {
            return Ok(SampledCheck {
                samples,
                seed,
                witness: Some(f),
            });
        }
    }
    Ok(SampledCheck {
        samples,
        seed,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const V: [&str; 2] = ["x", "y"];

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, &V).unwrap()
    }

    fn op(s: &str) -> DiffOp {
        DiffOp::parse(s, &V, None).unwrap()
    }

    fn id(gens: &[&str]) -> IdealHandle {
        IdealHandle::new(2, gens.iter().map(|s| p(s)).collect())
    }

    #[test]
    fn application() {
        assert_eq!(op("dx").apply(&p("x^2")).unwrap(), p("2*x"));
        assert_eq!(op("y*dx*dy").apply(&p("x^2*y")).unwrap(), p("2*x*y"));
        let f = p("x^3 + y - 4");
        assert_eq!(op("1").apply(&f).unwrap(), f);
        let modx = op("1").with_modulus(id(&["x"]));
        assert_eq!(modx.apply(&f).unwrap(), p("y - 4"));
        assert!(op("dx").apply(&Polynomial::one(3)).is_err());
    }

    #[test]
    fn brackets() {
        assert_eq!(op("dx").bracket(&p("x")), op("1"));
        assert!(op("dx").bracket(&p("y")).is_zero());
        assert_eq!(op("dx*dy").bracket(&p("x")), op("dy"));
        assert!(op("x + 3").bracket(&p("y^2")).is_zero());
        assert_eq!(
            op("dx^2").compose_multiplication(&p("x")),
            op("x*dx^2 + 2*dx")
        );
    }

    #[test]
    fn orders() {
        assert_eq!(op("dx^2 + y*dx").order(), 2);
        assert_eq!(op("x").order(), 0);
        assert_eq!(op("dx").with_modulus(id(&["x"])).order(), 1);
        assert_eq!(op("x*dx").with_modulus(id(&["x"])).order(), 0);
    }

    #[test]
    fn text_round_trip() {
        for s in [
            "1",
            "dx",
            "dx + dy",
            "y*dx*dy + 1",
            "dx^2",
            "-1/2*x*dy + dx^3",
        ] {
            let o = op(s);
            assert_eq!(op(&o.format(&V)), o, "{s}");
        }
        assert_eq!(op("dx + dy").format(&V), "dx + dy");
        assert!(DiffOp::parse("dx", &["x", "dx"], None).is_err());
        let set = OperatorSet::parse("1; dx", &V, id(&["x"])).unwrap();
        assert_eq!(set.format(&V), "1; dx");
        assert_eq!(set.max_order(), 1);
    }

    #[test]
    fn reconstruct_from_monomials() {
        let d = op("y*dx*dy + 3*dx^2 - x + dy");
        let r =
            DiffOp::reconstruct(2, 2, None, |m| d.apply(&Polynomial::monomial(m.clone()))).unwrap();
        assert_eq!(r, d);
    }

    #[test]
    fn order_lemma_fixtures() {
        let rad = id(&["x"]);
        let pi_dx = op("dx").with_modulus(rad.clone());
        let r = check_order_lemma(&pi_dx, &id(&["x - y"]), &id(&["y"]), 2, 20, 7).unwrap();
        assert!(r.passed());
        let pi = op("1").with_modulus(rad);
        assert!(
            check_order_lemma(&pi, &id(&["x - y", "x*y"]), &id(&["y"]), 3, 20, 7)
                .unwrap()
                .passed()
        );
        assert!(
            check_order_lemma(&op("dx^2"), &id(&["x"]), &id(&["x"]), 1, 20, 7)
                .unwrap()
                .passed()
        );
    }
}
