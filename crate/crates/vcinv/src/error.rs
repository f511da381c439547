//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("field size {q} exceeds the supported bound {bound}")]
    FieldTooLarge { q: u64, bound: u64 },

    #[error("invalid field element: {0}")]
    BadElement(String),

    #[error("division by zero in a finite field")]
    DivisionByZero,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,

    #[error("polynomial is not bihomogeneous")]
    NotBihomogeneous,

    #[error("matrix is singular")]
    Singular,

    #[error("group of order {order} exceeds the enumeration bound {bound}")]
    GroupTooLarge { order: String, bound: u64 },

    #[error("component dimension {dim} exceeds the configured bound {bound}")]
    ComponentTooLarge { dim: usize, bound: usize },

    #[error("cross-check failed: {0}")]
    CrossCheck(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
