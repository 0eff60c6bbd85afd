use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A computation would exceed a caller-supplied resource cap.
    #[error("budget exceeded: {what} would reach {required}, limit is {limit}")]
    Budget {
        what: &'static str,
        required: u128,
        limit: u128,
    },

    /// `x^d` does not divide a polynomial that was expected to be divisible by it.
    #[error("exact division by x^{divisor} failed: term with x-degree {found}")]
    NotDivisible { divisor: u32, found: u32 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("argument outside the domain of {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    #[error("{op} has a pole at {at}")]
    Pole { op: &'static str, at: String },

    #[error("no real root: {0}")]
    NoRealRoot(String),

    #[error("instance too large for {op}: {size} exceeds cap {cap}")]
    TooLarge {
        op: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
