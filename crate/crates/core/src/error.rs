use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{what} {value} out of range 0..={max}")]
    OutOfRange {
        what: &'static str,
        value: usize,
        max: usize,
    },

    #[error("relation cycle through `{0}`")]
    Cycle(String),

    #[error("unknown element `{0}`")]
    UnknownName(String),

    #[error("duplicate element `{0}`")]
    DuplicateName(String),

    #[error("maximal-chain enumeration exceeded the limit of {0} chains")]
    ChainLimitExceeded(usize),

    #[error("invalid support form: {0}")]
    InvalidForm(String),

    #[error("invalid input: {0}")]
    Input(String),

    /// A consistency check between two independent computations failed.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}
