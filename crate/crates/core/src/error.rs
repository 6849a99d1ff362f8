use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Argument outside the domain of an operation (e.g. evaluating a weight at t > 0).
    #[error("domain error: {0}")]
    Domain(String),

    /// Malformed weight/grid/config specification string.
    #[error("parse error: {0}")]
    Parse(String),

    /// Structurally invalid input (empty grid, non-increasing abscissae, bad parameter range).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An integrand produced a non-finite sample.
    #[error("integrand evaluated to a non-finite value at t = {t}")]
    Evaluation { t: f64 },

    /// Too few usable samples for a tail fit or limit estimate.
    #[error("estimation error: {0}")]
    Estimation(String),

    /// A stated precondition of an operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Two routes that must agree produced different verdict kinds.
    #[error("internal consistency error: {0}")]
    Inconsistency(String),

    #[error("composition pole: {0}")]
    Pole(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
