use thiserror::Error;

use crate::freealg::Field;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("{value} is not invertible in {field}")]
    NotInvertible { value: String, field: Field },

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),

    #[error("empty pattern")]
    EmptyPattern,

    #[error("invalid generator name {0:?}")]
    InvalidGeneratorName(String),

    #[error("duplicate generator {0:?}")]
    DuplicateGenerator(String),

    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),

    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("rule {rule}: {msg}")]
    InvalidRule { rule: usize, msg: String },

    #[error("occurrence does not match the rule")]
    OccurrenceMismatch,

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),

    #[error("termination certificate failed: {0}")]
    NotCertified(String),

    #[error("system is not minimal: {0}")]
    NotMinimal(String),

    #[error("rule {0} is not length-homogeneous")]
    NotLengthHomogeneous(usize),

    #[error("step fuse exceeded after {0} steps")]
    FuseExceeded(usize),

    #[error("{what}: size {size} exceeds budget {budget}")]
    BudgetExceeded {
        what: &'static str,
        size: usize,
        budget: usize,
    },
}
