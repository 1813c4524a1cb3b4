use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("group has no unit")]
    NoUnit,
    #[error("unit {0} is not a nonzero element of the positive cone")]
    BadUnit(String),
    #[error("{0} is not an element of the carrier")]
    NotInCarrier(String),
    #[error("infinite carrier: {0}")]
    InfiniteCarrier(String),
    #[error("malformed table: {0}")]
    Table(String),
    #[error("predicate syntax: {0}")]
    Predicate(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("ideal is not a Riesz ideal: {0}")]
    NotRiesz(String),
    #[error("{0} is not below {1}")]
    Incomparable(String, String),
    #[error("state is not valued: {0}")]
    NotValued(String),
    #[error("invalid decomposition: {0}")]
    Decomposition(String),
    #[error("map does not preserve the positive cone: {0}")]
    NotPositive(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
}

pub type Result<T> = std::result::Result<T, Error>;
