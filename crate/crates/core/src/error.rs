use thiserror::Error;

/// Errors produced by the exact-arithmetic and enumeration routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("malformed rational {0:?}")]
    ParseRational(String),

    #[error("multinomial parts sum to {sum}, expected {m}")]
    MultinomialMismatch { m: usize, sum: usize },

    #[error("coefficient index {i} out of range 0..={m}")]
    IndexOutOfRange { i: usize, m: usize },

    #[error("hypergeometric denominator (1/2-{m})_{k} vanished")]
    VanishingDenominator { m: usize, k: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("quadrature did not converge after {intervals} subintervals (error estimate {estimate:e}, tolerance {tol:e})")]
    QuadratureDiverged {
        intervals: usize,
        estimate: f64,
        tol: f64,
    },

    #[error(
        "refusing to enumerate {what} for m = {m} above limit {limit} (about {estimate} objects)"
    )]
    LimitExceeded {
        what: &'static str,
        m: usize,
        limit: usize,
        estimate: String,
    },

    #[error("invalid structure: {0}")]
    InvalidStructure(String),

    #[error("malformed canonical word: {0}")]
    MalformedWord(String),

    #[error("cycle containing {0} mixes red and non-red elements")]
    RedIsolation(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
