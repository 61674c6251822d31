use std::fmt;

use num_traits::Zero;

use super::gcd::{exact_div, gcd};
use super::order::MonomialOrder;
use super::polynomial::Polynomial;
use super::Rational;
use crate::error::{Error, Result};

/// Quotient of two polynomials; an element of the fraction field of the
/// polynomial ring it lives in.
///
/// Arithmetic does not cancel common factors; call [`RationalFunction::reduce`]
/// when a canonical representative is needed.
#[derive(Clone)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RationalFunction { num, den })
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        let n = p.nvars();
        RationalFunction {
            num: p,
            den: Polynomial::one(n),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::from_polynomial(Polynomial::constant(nvars, c))
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_polynomial(Polynomial::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_polynomial(Polynomial::one(nvars))
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial this equals, if the denominator divides the numerator.
    pub fn as_polynomial(&self) -> Option<Polynomial> {
        exact_div(&self.num, &self.den)
    }

    /// Moves rational content into the numerator and makes the denominator
    /// monic; cheap, no polynomial gcd.
    pub fn normalize_content(mut self) -> Self {
        if self.num.is_zero() {
            self.den = Polynomial::one(self.nvars());
            return self;
        }
        if let Some((_, lc)) = self.den.leading_term(&MonomialOrder::Grevlex) {
            let inv = lc.recip();
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
        self
    }

    /// Cancels the gcd of numerator and denominator; the result has a monic
    /// denominator and is canonical.
    pub fn reduce(self) -> Self {
        if self.num.is_zero() {
            return Self::zero(self.nvars());
        }
        if self.den.is_constant() {
            return self.normalize_content();
        }
        let g = gcd(&self.num, &self.den);
        let (num, den) = if g.is_one() {
            (self.num, self.den)
        } else {
            (
                exact_div(&self.num, &g).expect("gcd divides"),
                exact_div(&self.den, &g).expect("gcd divides"),
            )
        };
        RationalFunction { num, den }.normalize_content()
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return RationalFunction {
                num: &self.num + &o.num,
                den: self.den.clone(),
            }
            .normalize_content();
        }
        RationalFunction {
            num: &(&self.num * &o.den) + &(&o.num * &self.den),
            den: &self.den * &o.den,
        }
        .normalize_content()
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        RationalFunction {
            num: &self.num * &o.num,
            den: &self.den * &o.den,
        }
        .normalize_content()
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone()).map(Self::normalize_content)
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Evaluates a polynomial whose variable `i` is replaced by `images[i]`.
    pub fn substitute(p: &Polynomial, images: &[RationalFunction]) -> Result<Self> {
        if images.len() != p.nvars() {
            return Err(if images.len() < p.nvars() {
                Error::UnassignedVariable(images.len())
            } else {
                Error::VariableMismatch {
                    expected: p.nvars(),
                    found: images.len(),
                }
            });
        }
        let target = images.first().map(|r| r.nvars()).unwrap_or(0);
        let mut acc = RationalFunction::zero(target);
        let mut powers: Vec<Vec<RationalFunction>> = images
            .iter()
            .map(|r| vec![RationalFunction::one(target), r.clone()])
            .collect();
        for (m, c) in p.terms() {
            let mut t = RationalFunction::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().expect("nonempty").mul(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e as usize]);
            }
            acc = acc.add(&t);
        }
        Ok(acc.reduce())
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        (&self.num * &other.den) == (&other.num * &self.den)
    }
}

impl Eq for RationalFunction {}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{:?}", self.num)
        } else {
            write!(f, "({:?})/({:?})", self.num, self.den)
        }
    }
}

impl RationalFunction {
    pub fn format<S: AsRef<str>>(&self, vars: &[S]) -> String {
        let n = super::format_polynomial(&self.num, vars);
        if self.den.is_one() {
            return n;
        }
        let d = super::format_polynomial(&self.den, vars);
        format!("({n})/({d})")
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.num.is_constant() && self.den.is_constant() {
            let d = self.den.constant_term();
            if d.is_zero() {
                return None;
            }
            Some(self.num.constant_term() / d)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, &["u", "v"]).unwrap()
    }

    fn rf(n: &str, d: &str) -> RationalFunction {
        RationalFunction::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn arithmetic_and_reduction() {
        let a = rf("1", "u");
        let b = rf("1", "u + 1");
        let s = a.add(&b).reduce();
        assert_eq!(s, rf("2*u + 1", "u^2 + u"));
        let q = rf("u^2 - 1", "2*u - 2").reduce();
        assert_eq!(q.numerator(), &p("1/2*u + 1/2"));
        assert!(q.denominator().is_one());
        assert!(RationalFunction::new(p("1"), p("0")).is_err());
        assert!(rf("u", "v").div(&RationalFunction::zero(2)).is_err());
    }

    #[test]
    fn substitution() {
        let f = parse_polynomial("x^2 - y", &["x", "y"]).unwrap();
        let images = [rf("1", "u"), rf("1", "u^2")];
        assert!(RationalFunction::substitute(&f, &images).unwrap().is_zero());
    }
}
