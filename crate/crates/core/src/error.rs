use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("interface size mismatch: lower diagram has {lower} top points, upper has {upper} bottom points")]
    SizeMismatch { lower: usize, upper: usize },

    #[error("context mismatch: left operand has context {left}, right has context {right}")]
    ContextMismatch { left: usize, right: usize },

    #[error("grade mismatch: expected {expected}, got {got}")]
    GradeMismatch { expected: usize, got: usize },

    #[error("operation requires grade >= 1, element has grade 0")]
    GradeZero,

    #[error("operation requires context >= 1, element has context 0")]
    ContextZero,

    #[error("jones projection index {index} does not fit in context {context} (needs index + 1 <= context)")]
    JonesIndexOutOfRange { index: usize, context: usize },

    #[error("enumeration limit exceeded: {points} boundary points (limit {limit})")]
    EnumerationLimit { points: usize, limit: usize },

    #[error("point count must have even total, got bottom {bottom} + top {top}")]
    OddPointCount { bottom: usize, top: usize },

    #[error("evaluation point must be positive, got {0}")]
    NonPositiveEvaluationPoint(f64),

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("invalid {kind}: {reason}")]
    Invalid { kind: &'static str, reason: String },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn invalid(kind: &'static str, reason: impl Into<String>) -> Self {
        Error::Invalid {
            kind,
            reason: reason.into(),
        }
    }

    pub(crate) fn parse(reason: impl Into<String>) -> Self {
        Error::Parse(reason.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
