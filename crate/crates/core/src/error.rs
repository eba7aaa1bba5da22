use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DgError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("malformed map: {0}")]
    MalformedMap(String),
    #[error("ambient space mismatch")]
    AmbientMismatch,
    #[error("subspace is not contained in the given space")]
    NotContained,
    #[error("malformed algebra: {0}")]
    MalformedAlgebra(String),
    #[error("malformed module: {0}")]
    MalformedModule(String),
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("window too small: [{lo}, {hi}] needs hi - lo >= 2")]
    WindowTooSmall { lo: i64, hi: i64 },
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("unsupported instance: {0}")]
    UnsupportedInstance(String),
    #[error("enumeration budget exceeded: {needed} closures needed, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("regularity condition undecided: {0}")]
    RegularityUndecided(String),
    /// A theorem-predicted outcome failed; this indicates a bug, not mathematics.
    #[error("theorem assertion alarm: {0}")]
    Alarm(String),
}

pub type Result<T> = std::result::Result<T, DgError>;
