use thiserror::Error;

/// Errors surfaced by the library.
///
/// `SplitField` and `AxiomViolation` are given distinct variants because the
/// CLI maps them to dedicated exit codes (3 and 2 respectively).
#[derive(Debug, Error)]
pub enum PfsError {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("field GF({p}^{k}) is not supported (order exceeds 2^16)")]
    UnsupportedField { p: u64, k: u32 },

    #[error("base field does not split the algebra: {0}; retry with a larger field degree")]
    SplitField(String),

    #[error("pointed-refinement axiom violated: {0}")]
    AxiomViolation(String),

    #[error("internal inconsistency (a theory-guaranteed property failed): {0}")]
    Inconsistency(String),

    #[error("invalid input: {0}")]
    BadInput(String),

    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
}

pub type PfsResult<T> = Result<T, PfsError>;
