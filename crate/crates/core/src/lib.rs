//! Exact computation and verification of Noetherian differential operators
//! for ideals in quotients of polynomial rings over Q, together with
//! experiments on differential Artin-Rees containments.

pub mod closures;
pub mod diffops;
pub mod error;
pub mod groebner;
pub mod linalg;
pub mod noetherian;
pub mod poly;
pub mod sample;
pub mod uniformity;

pub use error::{Error, Result};
