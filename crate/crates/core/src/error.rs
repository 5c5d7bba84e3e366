use thiserror::Error;

/// Errors raised by the algebra.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("division is not exact: remainder {remainder}")]
    InexactDivision { remainder: String },

    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeCap { degree: usize, cap: usize },

    #[error("branch jets disagree at order {index}: {left} vs {right}")]
    JetMismatch {
        index: usize,
        left: String,
        right: String,
    },

    #[error("operands live on different spaces: K{left} vs K{right}")]
    SpaceMismatch { left: usize, right: usize },

    #[error("profile must vanish to order exactly {expected} at 0, found {}", match .found { Some(n) => n.to_string(), None => "identically zero".to_string() })]
    ProfileOrder { expected: usize, found: Option<usize> },

    #[error("operator has order {found}, which exceeds the declared order {declared}")]
    OrderExceeded { found: usize, declared: usize },

    #[error("operator pair is not admissible at order {order} on K{contact}: {violated} constraint(s) violated")]
    NotAdmissible {
        order: usize,
        contact: usize,
        violated: usize,
    },

    #[error("internal closure failure: {operation} produced a pair that is not admissible at order {order}")]
    ClosureViolation {
        operation: &'static str,
        order: usize,
    },

    #[error("symbol of degree {degree} on K{contact} violates {violated} condition(s)")]
    InvalidSymbol {
        degree: usize,
        contact: usize,
        violated: usize,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
