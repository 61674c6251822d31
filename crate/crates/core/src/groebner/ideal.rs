use std::fmt;
use std::sync::{Arc, OnceLock};

use super::buchberger::{from_terms, groebner_terms, reduce, to_terms, Terms};
use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, Polynomial};

struct Basis {
    terms: Vec<Terms>,
    polys: Vec<Polynomial>,
}

struct Inner {
    nvars: usize,
    generators: Vec<Polynomial>,
    order: MonomialOrder,
    gb: OnceLock<Basis>,
}

/// An ideal given by generators, with its reduced Gröbner basis computed on
/// first use and shared between clones.
#[derive(Clone)]
pub struct IdealHandle {
    inner: Arc<Inner>,
}

impl IdealHandle {
    /// Ideal generated by `generators` in `nvars` variables; zero generators are dropped.
    pub fn new(nvars: usize, generators: Vec<Polynomial>) -> Self {
        Self::with_order(nvars, generators, MonomialOrder::Grevlex)
    }

    pub fn with_order(nvars: usize, generators: Vec<Polynomial>, order: MonomialOrder) -> Self {
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        IdealHandle {
            inner: Arc::new(Inner {
                nvars,
                generators,
                order,
                gb: OnceLock::new(),
            }),
        }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::new(nvars, Vec::new())
    }

    pub fn unit(nvars: usize) -> Self {
        Self::new(nvars, vec![Polynomial::one(nvars)])
    }

    pub fn nvars(&self) -> usize {
        self.inner.nvars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.inner.generators
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.inner.order
    }

    fn basis(&self) -> &Basis {
        self.inner.gb.get_or_init(|| {
            let terms = groebner_terms(&self.inner.generators, &self.inner.order);
            let polys = terms
                .iter()
                .map(|t| from_terms(self.inner.nvars, t.clone()))
                .collect();
            Basis { terms, polys }
        })
    }

    /// Reduced Gröbner basis, sorted by increasing leading monomial.
    pub fn groebner_basis(&self) -> &[Polynomial] {
        &self.basis().polys
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis()
            .terms
            .iter()
            .map(|t| t.last().expect("nonempty").0.clone())
            .collect()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.basis().terms.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.basis().polys.first().is_some_and(|p| p.is_one())
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        if f.is_zero() {
            return f.clone();
        }
        let ord = &self.inner.order;
        let r = reduce(to_terms(f, ord), &self.basis().terms, ord);
        from_terms(f.nvars(), r)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    /// First generator of `other` not in `self`, if any.
    pub fn missing_generator<'a>(&self, other: &'a IdealHandle) -> Option<&'a Polynomial> {
        other.generators().iter().find(|g| !self.contains(g))
    }

    pub fn contains_ideal(&self, other: &IdealHandle) -> bool {
        self.missing_generator(other).is_none()
    }

    pub fn equals(&self, other: &IdealHandle) -> bool {
        if self.inner.order == other.inner.order {
            return self.groebner_basis() == other.groebner_basis();
        }
        self.contains_ideal(other) && other.contains_ideal(self)
    }

    fn check_vars(&self, other: &IdealHandle) -> Result<()> {
        if self.nvars() != other.nvars() {
            return Err(Error::VariableMismatch {
                expected: self.nvars(),
                found: other.nvars(),
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &IdealHandle) -> Result<IdealHandle> {
        self.check_vars(other)?;
        let mut gens = self.generators().to_vec();
        gens.extend(other.generators().iter().cloned());
        Ok(IdealHandle::new(self.nvars(), gens))
    }

    /// Adds extra generators.
    pub fn extend(&self, extra: &[Polynomial]) -> IdealHandle {
        let mut gens = self.generators().to_vec();
        gens.extend(extra.iter().cloned());
        IdealHandle::new(self.nvars(), gens)
    }

    pub fn product(&self, other: &IdealHandle) -> Result<IdealHandle> {
        self.check_vars(other)?;
        let mut gens = Vec::new();
        for f in self.generators() {
            for g in other.generators() {
                let p = f * g;
                if !gens.contains(&p) {
                    gens.push(p);
                }
            }
        }
        Ok(IdealHandle::new(self.nvars(), gens))
    }

    /// Generated by all `n`-fold products of generators; `I^0 = (1)`.
    pub fn power(&self, n: u32) -> IdealHandle {
        let nv = self.nvars();
        if n == 0 {
            return IdealHandle::unit(nv);
        }
        let gens = self.generators();
        // multisets of size n as non-decreasing index sequences
        let mut layer: Vec<(usize, Polynomial)> =
            (0..gens.len()).map(|i| (i, gens[i].clone())).collect();
        for _ in 1..n {
            let mut next = Vec::new();
            for (last, p) in &layer {
                for (j, g) in gens.iter().enumerate().skip(*last) {
                    next.push((j, p * g));
                }
            }
            layer = next;
        }
        let mut out: Vec<Polynomial> = Vec::with_capacity(layer.len());
        for (_, p) in layer {
            if !out.contains(&p) {
                out.push(p);
            }
        }
        IdealHandle::new(nv, out)
    }

    /// `self ∩ Q[vars \ drop]`, still as an ideal in all variables.
    pub fn eliminate(&self, drop: &[usize]) -> IdealHandle {
        if drop.is_empty() {
            return self.clone();
        }
        let ord = MonomialOrder::elimination(self.nvars(), drop.to_vec());
        let gb = IdealHandle::with_order(self.nvars(), self.generators().to_vec(), ord);
        let kept = gb
            .groebner_basis()
            .iter()
            .filter(|g| drop.iter().all(|&v| !g.uses_var(v)))
            .cloned()
            .collect();
        IdealHandle::new(self.nvars(), kept)
    }

    /// `self : g^∞`.
    pub fn saturate(&self, g: &Polynomial) -> Result<IdealHandle> {
        if g.is_zero() {
            return Err(Error::ZeroSaturation);
        }
        if g.nvars() != self.nvars() {
            return Err(Error::VariableMismatch {
                expected: self.nvars(),
                found: g.nvars(),
            });
        }
        let n = self.nvars();
        if self.is_zero_ideal() {
            return Ok(self.clone());
        }
        let t = Polynomial::var(n + 1, n);
        let mut gens: Vec<Polynomial> =
            self.generators().iter().map(|f| f.extend_vars(1)).collect();
        gens.push(Polynomial::one(n + 1) - &t * &g.extend_vars(1));
        let elim = IdealHandle::new(n + 1, gens).eliminate(&[n]);
        let back = elim
            .generators()
            .iter()
            .map(|f| f.truncate_vars(n))
            .collect::<Result<Vec<_>>>()?;
        Ok(IdealHandle::new(n, back))
    }

    pub fn intersect(&self, other: &IdealHandle) -> Result<IdealHandle> {
        self.check_vars(other)?;
        let n = self.nvars();
        if self.is_zero_ideal() || other.is_zero_ideal() {
            return Ok(IdealHandle::zero(n));
        }
        let t = Polynomial::var(n + 1, n);
        let one_minus_t = &Polynomial::one(n + 1) - &t;
        let mut gens: Vec<Polynomial> = self
            .generators()
            .iter()
            .map(|f| &t * &f.extend_vars(1))
            .collect();
        gens.extend(
            other
                .generators()
                .iter()
                .map(|f| &one_minus_t * &f.extend_vars(1)),
        );
        let elim = IdealHandle::new(n + 1, gens).eliminate(&[n]);
        let back = elim
            .generators()
            .iter()
            .map(|f| f.truncate_vars(n))
            .collect::<Result<Vec<_>>>()?;
        Ok(IdealHandle::new(n, back))
    }

    /// Monomials outside the leading-term ideal, in increasing order; the
    /// ideal must be zero-dimensional.
    pub fn standard_monomials(&self) -> Result<Vec<Monomial>> {
        let vars: Vec<usize> = (0..self.nvars()).collect();
        let mut out = standard_monomials_in(&self.leading_monomials(), &vars, self.nvars())?;
        out.sort_by(|a, b| self.inner.order.cmp(a, b));
        Ok(out)
    }

    pub fn colength(&self) -> Result<usize> {
        Ok(self.standard_monomials()?.len())
    }

    /// Maximal total degree among the generators (0 for the zero ideal).
    pub fn max_generator_degree(&self) -> u32 {
        self.generators()
            .iter()
            .filter_map(|g| g.total_degree())
            .max()
            .unwrap_or(0)
    }

    /// True when every generator is a single term.
    pub fn is_monomial(&self) -> bool {
        self.generators().iter().all(|g| g.len() == 1)
    }

    pub fn reduce_generators_mod(&self, modulus: &IdealHandle) -> IdealHandle {
        let gens = self
            .generators()
            .iter()
            .map(|g| modulus.normal_form(g))
            .filter(|g| !g.is_zero())
            .collect();
        IdealHandle::new(self.nvars(), gens)
    }
}

/// Monomials in `vars` divisible by none of `lms` restricted to `vars`.
/// Every listed variable needs a pure power among the restrictions.
pub(crate) fn standard_monomials_in(
    lms: &[Monomial],
    vars: &[usize],
    nvars: usize,
) -> Result<Vec<Monomial>> {
    let lms: Vec<Monomial> = lms.iter().map(|m| m.restrict(vars)).collect();
    if lms.iter().any(|m| m.is_one()) {
        return Ok(Vec::new());
    }
    let mut bound = Vec::with_capacity(vars.len());
    for &v in vars {
        match lms
            .iter()
            .filter(|m| m.pure_power_var() == Some(v))
            .map(|m| m.exponent(v))
            .min()
        {
            Some(e) => bound.push(e),
            None => return Err(Error::NotZeroDimensional(v)),
        }
    }
    let mut out = Vec::new();
    let mut exps = vec![0u32; vars.len()];
    loop {
        let mut e = vec![0u32; nvars];
        for (k, &v) in vars.iter().enumerate() {
            e[v] = exps[k];
        }
        let m = Monomial::from_exponents(e);
        if !lms.iter().any(|l| l.divides(&m)) {
            out.push(m);
        }
        // odometer over the box below the pure powers
        let mut i = 0;
        loop {
            if i == vars.len() {
                return Ok(out);
            }
            exps[i] += 1;
            if exps[i] < bound[i] {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

impl fmt::Debug for IdealHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.generators()).finish()
    }
}

impl PartialEq for IdealHandle {
    fn eq(&self, other: &Self) -> bool {
        self.nvars() == other.nvars() && self.equals(other)
    }
}
