use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid rational literal {0:?}")]
    ParseRational(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// Substituting `y = x/(1 + lambda x)` hit a pole.
    #[error("cannot evaluate at x = {x}: 1 + lambda*x = 0 for lambda = {lambda}")]
    Evaluation { x: String, lambda: String },

    #[error("expected at least {expected} values, got {actual}")]
    Length { expected: usize, actual: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("series did not converge within {budget} terms")]
    Convergence { budget: usize },

    #[error("distribution has negative mass {mass} at index {index}")]
    SignedMass { index: u64, mass: String },

    #[error("cumulative table reached {coverage} after {terms} terms; tail not covered")]
    Tail { coverage: f64, terms: usize },

    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),

    #[error("missing parameter {0:?}")]
    MissingParameter(String),
}
