//! Gröbner bases and ideal arithmetic.

mod buchberger;
mod ideal;
mod ring;

pub use buchberger::buchberger;
pub(crate) use ideal::standard_monomials_in;
pub use ideal::IdealHandle;
pub use ring::{parse_ideal_family, parse_ideal_text, RingSpec};
