use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("invalid sparse structure: {0}")]
    InvalidSparse(String),

    #[error("complex-mode matrix applied to a real vector")]
    ModeMismatch,

    /// The matrix is identically zero, so sigma = 0 exactly and no bound applies.
    #[error("degenerate input: all-zero matrix (sigma = 0)")]
    ZeroMatrix,

    /// Every row walk value at the denominator level vanished.
    #[error("degenerate input: walk died at level {level}")]
    DeadWalk { level: usize },

    /// Sum of the entries of AA* is zero, so the all-ones vector lies in the
    /// kernel of AA* and every walk total w^r, r >= 1, is zero.
    #[error(
        "lower walk bound inapplicable: entry sum of AA* is {entry_sum:e}, \
         the all-ones vector is a null vector of AA*"
    )]
    TheoremInapplicable { entry_sum: f64 },

    #[error("walk level {requested} not recorded (ledger depth {depth})")]
    LevelOutOfRange { requested: usize, depth: usize },

    #[error("invalid partition: {0}")]
    Partition(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}
