use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    /// Enumeration refused up front because the predicted generator count
    /// is larger than the configured budget.
    #[error("enumeration budget exceeded: predicted {predicted} generators, budget {budget}")]
    BudgetExceeded { predicted: u128, budget: u64 },

    /// Subset search ran out of its verification-step budget.
    #[error("search budget exceeded: {0}")]
    SearchBudget(String),

    /// A structural fact that must hold was observed to fail.
    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
