use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("singular system: zero pivot at row {row}")]
    SingularSystem { row: usize },

    #[error("positivity violation: eigenvalue {eigenvalue:e} below -{tol:e} * lambda_max ({lambda_max:e})")]
    PositivityViolation {
        eigenvalue: f64,
        lambda_max: f64,
        tol: f64,
    },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("eigendecomposition did not converge")]
    NoConvergence,

    #[error("branch assertion failed: {0}")]
    Branch(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_len(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}

pub(crate) fn ensure_finite(values: &[f64], what: &'static str) -> Result<()> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite(what))
    }
}
