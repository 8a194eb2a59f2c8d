use thiserror::Error;

/// Errors raised by the algebraic and numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopfError {
    #[error("cannot parse `{token}`: {reason}")]
    Parse { token: String, reason: String },

    #[error("pole: denominator {den} vanishes at the evaluation point")]
    Pole { den: String },

    #[error("unbound variable `{0}` during evaluation")]
    UnboundVariable(String),

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeCap { degree: usize, cap: usize },

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("operation requires nonempty factors")]
    EmptyFactor,

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("series is not unital in degree 0")]
    NonUnital,

    #[error("all {0} sampled points hit a pole")]
    RetryExhausted(usize),

    #[error("density `{0}` is not symmetric")]
    AsymmetricDensity(String),

    #[error("sequence has unbounded support where a finite one is required")]
    Unbounded,

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = HopfError> = std::result::Result<T, E>;

pub(crate) fn parse_err(token: impl Into<String>, reason: impl Into<String>) -> HopfError {
    HopfError::Parse {
        token: token.into(),
        reason: reason.into(),
    }
}
