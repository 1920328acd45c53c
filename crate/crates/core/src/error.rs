use thiserror::Error;

/// Errors produced anywhere in the crate.
///
/// The CLI maps these onto exit codes: validation-type errors exit with 1,
/// [`Error::PrecisionExhausted`] with 2 and [`Error::SearchExhausted`] with 3.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("cannot parse {0:?} as a rational number")]
    ParseRational(String),

    #[error("invalid input: {0}")]
    Validation(String),

    #[error("operands live over different irrational bases")]
    MixedBases,

    #[error("precision exhausted: enclosure still undecided at {bits} bits")]
    PrecisionExhausted { bits: u32 },

    #[error("value lies on an interval endpoint: {0}")]
    Boundary(String),

    #[error("evaluation at a discontinuity: {0}")]
    Discontinuity(String),

    #[error("search exhausted: {0}")]
    SearchExhausted(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
