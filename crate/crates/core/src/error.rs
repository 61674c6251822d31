use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("unknown variable `{name}` at position {position}")]
    UnknownVariable { name: String, position: usize },

    #[error("variable count mismatch: expected {expected}, found {found}")]
    VariableMismatch { expected: usize, found: usize },

    #[error("variable {0} is not assigned")]
    UnassignedVariable(usize),

    #[error("division by zero")]
    DivisionByZero,

    #[error("ideal is not zero-dimensional: no pure power of variable {0} among leading terms")]
    NotZeroDimensional(usize),

    #[error("point is not a root of the ideal (generator {0} does not vanish)")]
    PointNotRoot(usize),

    #[error("ideal is not primary to the maximal ideal of the point: local dual stalled at {found} of {colength}")]
    NotPrimaryAtPoint { found: usize, colength: usize },

    #[error(
        "prime has no rational point over the fraction field of the independent variables: {0}"
    )]
    NonRationalPoint(String),

    #[error("declared independent variables are not independent modulo the prime")]
    NotIndependent,

    #[error("claimed primary ideal is not contained in its prime (generator {0})")]
    PrimaryNotInPrime(usize),

    #[error("intersection mismatch: {0}")]
    IntersectionMismatch(String),

    #[error("ring specification is inconsistent: {0}")]
    InconsistentRing(String),

    #[error("operator modulus does not match: {0}")]
    ModulusMismatch(String),

    #[error("non-monomial generator: {0}")]
    NonMonomial(String),

    #[error("saturation witness lies in the prime")]
    WitnessInPrime,

    #[error("saturation by the zero polynomial")]
    ZeroSaturation,

    #[error("embedding data is inconsistent: {0}")]
    InconsistentEmbedding(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
