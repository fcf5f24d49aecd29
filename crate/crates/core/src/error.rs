use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid number `{0}`")]
    InvalidNumber(String),
    #[error("time scalars live in different rings (k = {left} vs k = {right})")]
    RingMismatch { left: String, right: String },
    #[error("`{0}` is not an invertible monomial")]
    NotInvertible(String),
    #[error("outside the domain: {0}")]
    Domain(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("unknown algebra `{name}`; available: {available}")]
    UnknownAlgebra { name: String, available: String },
    #[error("structural inconsistency: {0}")]
    Structural(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{algebra} is {found}, not {expected}")]
    ClassMismatch { algebra: String, expected: String, found: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
