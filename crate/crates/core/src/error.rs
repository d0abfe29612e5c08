use thiserror::Error;

/// Errors raised by the algebraic engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("specialization pole at q = {0}")]
    SpecializationPole(String),
    #[error("not skew Calabi-Yau: defining polynomial {0} has a multiple root")]
    NotSkewCalabiYau(String),
    #[error("multiple root: u^2 + 4v = 0")]
    MultipleRoot,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("input is not a cycle")]
    NotACycle,
    #[error("chain has nonzero weight {0}")]
    NonZeroWeight(i64),
    #[error("relations not preserved: {0}")]
    RelationsNotPreserved(String),
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("undetermined at window N = {0}")]
    Undetermined(u32),
}

pub type Result<T> = std::result::Result<T, Error>;
