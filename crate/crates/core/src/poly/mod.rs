//! Exact rational arithmetic, sparse multivariate polynomials, rational
//! functions and monomial orders.

mod gcd;
mod monomial;
mod order;
mod parse;
mod polynomial;
mod ratfun;

use num_bigint::BigInt;

pub use gcd::{exact_div, gcd, lcm};
pub use monomial::{monomials_of_degree, monomials_up_to, monomials_up_to_in, Monomial};
pub use order::{BlockKind, MonomialOrder};
pub(crate) use parse::shift_position;
pub use parse::{format_polynomial, parse_polynomial, parse_polynomial_list};
pub use polynomial::Polynomial;
pub use ratfun::RationalFunction;

/// Exact rational number over arbitrary-precision integers.
pub type Rational = num_rational::BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d` as a reduced rational.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}
