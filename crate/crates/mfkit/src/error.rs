use thiserror::Error;

/// Errors surfaced by the library. Parse failures carry enough context to
/// point at the offending token; structural failures name the mismatch.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("malformed polynomial near `{0}`")]
    MalformedToken(String),

    #[error("coefficient `{0}` is not representable in the active field")]
    BadCoefficient(String),

    #[error("operands live in different rings")]
    MixedRings,

    #[error("negative exponent is not allowed")]
    NegativeExponent,

    #[error("matrix dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix factorizations have different scaling polynomials")]
    MismatchedScalar,

    #[error("variable `{0}` already exists in the ring")]
    VariableCollision(String),

    #[error("minor size {size} out of range for a {rows}x{cols} matrix")]
    MinorSizeOutOfRange {
        size: usize,
        rows: usize,
        cols: usize,
    },

    #[error("cannot invert `{0}`: it is zero in this ring")]
    InvertZero(String),

    #[error("annihilator of zero is the unit ideal; refusing element `{0}`")]
    AnnihilatorOfZero(String),

    #[error("colon ideal divisor is zero")]
    ColonByZero,

    #[error("incompatible ring towers: {0}")]
    IncompatibleTowers(String),

    #[error("unknown prime `{0}` in spectrum declaration")]
    UnknownPrime(String),

    #[error("family index must satisfy {0}")]
    BadFamilyIndex(&'static str),

    #[error("empty factorization list")]
    EmptyFactorization,

    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("invalid JSON input: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
