use std::ops::Range;

use thiserror::Error;

/// Byte range into the source text of an expression.
pub type Span = Range<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HyperError {
    #[error("operands belong to different number contexts")]
    ContextMismatch,

    #[error("invalid number context: {0}")]
    InvalidContext(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("equality cannot be certified: an operand was truncated")]
    TruncationAmbiguous,

    #[error("standard part is undefined for an infinite value")]
    NotFinite,

    #[error("floor is not determined by the model: {0}")]
    FloorUndecidable(String),

    #[error("argument outside the domain: {0}")]
    DomainError(String),

    #[error("elementary function at an infinite argument is not representable")]
    InfiniteArgument,

    #[error("{0} has no exact rational value; use float mode")]
    ExactTranscendental(String),

    #[error("unsupported exponential: {0}")]
    UnsupportedExponential(String),

    #[error("decimal place {0} is outside what the model can represent for this value")]
    PositionOutOfModel(String),

    #[error("derivative vanishes at step {0}")]
    DerivativeVanishes(usize),

    #[error("invariant `{assertion}` failed at step {index} (margin {margin})")]
    AssertionFailed {
        index: usize,
        assertion: String,
        margin: String,
    },

    #[error("no derivative: {0}")]
    NoDerivative(String),

    #[error("no limit: {0}")]
    NoLimit(String),

    #[error("microscope scale must be positive")]
    InvalidScale,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid JSON value: {0}")]
    InvalidJson(String),

    #[error("syntax error at {}..{}: {message}", span.start, span.end)]
    SyntaxError { span: Span, message: String },

    #[error("unknown identifier `{name}` at {}..{}", span.start, span.end)]
    UnknownIdentifier { name: String, span: Span },

    #[error("unsupported notation: {0}")]
    UnsupportedNotation(String),
}

impl HyperError {
    pub(crate) fn syntax(span: Span, message: impl Into<String>) -> Self {
        HyperError::SyntaxError {
            span,
            message: message.into(),
        }
    }

    /// Usage and syntax problems, as opposed to mathematical failures.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            HyperError::SyntaxError { .. }
                | HyperError::UnknownIdentifier { .. }
                | HyperError::UnsupportedNotation(_)
                | HyperError::InvalidArgument(_)
                | HyperError::InvalidContext(_)
                | HyperError::InvalidJson(_)
        )
    }

    /// Short machine-readable name, used in JSON error envelopes.
    pub fn kind(&self) -> &'static str {
        match self {
            HyperError::ContextMismatch => "ContextMismatch",
            HyperError::InvalidContext(_) => "InvalidContext",
            HyperError::DivisionByZero => "DivisionByZero",
            HyperError::TruncationAmbiguous => "TruncationAmbiguous",
            HyperError::NotFinite => "NotFinite",
            HyperError::FloorUndecidable(_) => "FloorUndecidable",
            HyperError::DomainError(_) => "DomainError",
            HyperError::InfiniteArgument => "InfiniteArgument",
            HyperError::ExactTranscendental(_) => "ExactTranscendental",
            HyperError::UnsupportedExponential(_) => "UnsupportedExponential",
            HyperError::PositionOutOfModel(_) => "PositionOutOfModel",
            HyperError::DerivativeVanishes(_) => "DerivativeVanishes",
            HyperError::AssertionFailed { .. } => "AssertionFailed",
            HyperError::NoDerivative(_) => "NoDerivative",
            HyperError::NoLimit(_) => "NoLimit",
            HyperError::InvalidScale => "InvalidScale",
            HyperError::InvalidArgument(_) => "InvalidArgument",
            HyperError::InvalidJson(_) => "InvalidJson",
            HyperError::SyntaxError { .. } => "SyntaxError",
            HyperError::UnknownIdentifier { .. } => "UnknownIdentifier",
            HyperError::UnsupportedNotation(_) => "UnsupportedNotation",
        }
    }
}

pub type Result<T, E = HyperError> = std::result::Result<T, E>;
