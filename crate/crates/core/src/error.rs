use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("division by the zero rational function")]
    DivisionByZero,
    #[error("pole at substitution: {0}")]
    PoleAtSubstitution(String),
    #[error("not expandable at the origin in {0}")]
    NotExpandable(String),
    #[error("unsupported pole shape: {0}")]
    UnsupportedPoleShape(String),
    #[error("evaluation at a pole: {0}")]
    EvaluationAtPole(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("exponent overflow")]
    ExponentOverflow,
}
