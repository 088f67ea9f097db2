use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("piece length must be at least 2, got {0}")]
    InvalidPieceLength(u32),

    #[error("piece length {got} not supported here: {reason}")]
    UnsupportedPieceLength { got: u32, reason: &'static str },

    #[error("invalid heap: {0}")]
    InvalidHeap(String),

    #[error("not a pyramid: {0}")]
    NotPyramid(String),

    #[error("pyramid is not normalized (bottom piece at offset {0}, expected 0)")]
    NotNormalized(i64),

    #[error("not a right 0-pyramid: {0}")]
    NotRightPyramid(String),

    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("invalid string: {0}")]
    InvalidString(String),

    #[error("string is not positive: {0}")]
    NotPositive(String),

    #[error("not a generalized Dyck path: {0}")]
    NotDyckPath(String),

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("walk has no admissible composition: {0}")]
    NoComposition(String),

    #[error("invalid admissible composition: {0}")]
    InvalidComposition(String),

    #[error("budget exceeded: {what} needs {needed}, cap is {cap}")]
    BudgetExceeded { what: String, needed: String, cap: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("singular design matrix: {0}")]
    Singular(String),

    #[error("no real root found: {0}")]
    NoRoot(String),
}

impl Error {
    pub(crate) fn budget(what: impl Into<String>, needed: impl ToString, cap: u64) -> Self {
        Error::BudgetExceeded {
            what: what.into(),
            needed: needed.to_string(),
            cap,
        }
    }
}
