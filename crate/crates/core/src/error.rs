use thiserror::Error;

/// Errors shared by all operations.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum OpError {
    #[error("{op}: budget exhausted after {attempts} attempts")]
    BudgetExhausted { op: &'static str, attempts: u32 },

    #[error("{op}: precondition failed: {clause}")]
    PreconditionFailed { op: &'static str, clause: String },

    #[error("too many copies: {copies} >= threshold {threshold}")]
    TooManyCopies { copies: u64, threshold: String },

    #[error("{op}: not found")]
    NotFound { op: &'static str },

    #[error("{op}: infeasible: {clause}")]
    Infeasible { op: &'static str, clause: String },

    #[error("invariant violation: {clause}")]
    InvariantViolation { clause: String },

    #[error("vertex id {index} out of range (n = {n})")]
    OutOfRange { index: usize, n: usize },

    #[error("oracle budget exceeded: n = {n} > max {max}")]
    OracleBudgetExceeded { n: usize, max: usize },
}

impl OpError {
    pub fn precondition(op: &'static str, clause: impl Into<String>) -> Self {
        OpError::PreconditionFailed { op, clause: clause.into() }
    }
}
