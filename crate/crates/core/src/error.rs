use thiserror::Error;

/// Errors shared across the algebra modules.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("prime basis mismatch between operands")]
    BasisMismatch,

    #[error("level or mode mismatch between operands")]
    LevelMismatch,

    #[error("division by zero")]
    DivisionByZero,

    #[error("generator index {index} exceeds level {level}")]
    IndexOutOfRange { index: u32, level: u32 },

    #[error("group element twists a radical outside the basis (index {index}, level {level})")]
    WindowViolation { index: u32, level: u32 },

    #[error("element is not exactly invertible in this mode: {0}")]
    NotInvertible(String),

    #[error("series normalization failed: {0}")]
    Normalization(String),

    #[error("prefix length {n} exceeds window {window}")]
    BudgetViolation { n: u32, window: u32 },

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
