use thiserror::Error;

/// Errors produced by the numerical engines and the input parsers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// No probed power of the element dropped below norm one.
    #[error("series not convergent: no power up to {probe_depth} has norm < 1 (smallest seen {best_norm:e})")]
    NotConvergent { probe_depth: usize, best_norm: f64 },

    #[error("budget exhausted: {0}")]
    Budget(String),

    #[error("singular: pivot {pivot:e} below threshold {threshold:e}")]
    Singular { pivot: f64, threshold: f64 },

    #[error("residual {residual:e} exceeds tolerance {tol:e}")]
    Residual { residual: f64, tol: f64 },

    #[error("norm axiom violated: nonzero element has norm 0")]
    NormAxiom,

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }

    /// True for failures of a convergence or invertibility certificate, as
    /// opposed to malformed input or violated preconditions.
    pub fn is_certificate_failure(&self) -> bool {
        matches!(
            self,
            Error::NotConvergent { .. } | Error::Singular { .. } | Error::Budget(_) | Error::Residual { .. }
        )
    }
}
