use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at {0}")]
    PoleAtEvaluation(String),
    #[error("q = {0} is not a rational square, but the value has half-integral q-degree")]
    NonSquareQ(String),
    #[error("imaginary part did not cancel: {0}")]
    NonRealResult(String),
    #[error("result has half-integral q-degree: {0}")]
    HalfIntegralDegree(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("group order mismatch for {family}: enumerated {found}, expected {expected}")]
    OrderMismatch { family: String, found: u64, expected: String },
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
