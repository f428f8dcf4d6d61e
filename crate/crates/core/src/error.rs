use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: u64, right: u64 },

    #[error("argument out of range: {0}")]
    Range(String),

    /// A Groebner computation ran past its configured budget.
    #[error("resource limit exceeded: {what} > {limit}")]
    ResourceLimit { what: &'static str, limit: u64 },

    /// An enumeration was refused because its estimated size exceeds the budget.
    #[error("enumeration budget exceeded: estimated {estimated} > budget {budget}")]
    BudgetExceeded { estimated: u128, budget: u128 },

    #[error("polynomial ring contexts do not match")]
    ContextMismatch,

    #[error("matrix is not nilpotent")]
    NotNilpotent,

    #[error("eigenvalues are not pairwise distinct in the coefficient field")]
    Distinctness,

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Whether the error reports an exhausted resource budget.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::ResourceLimit { .. } | Error::BudgetExceeded { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
