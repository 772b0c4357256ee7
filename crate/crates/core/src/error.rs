use thiserror::Error;

/// Errors raised by the exact and numerical routines.
///
/// `Domain` covers precondition violations by the caller; `Verification`
/// means an identity that must hold exactly (or within its stated tolerance)
/// did not.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("undefined resultant: {0}")]
    UndefinedResultant(&'static str),

    #[error("divergent integral: exponent {0} must exceed -1")]
    DivergentIntegral(String),

    #[error("pole in lower parameter at term {term}")]
    LowerParameterPole { term: usize },

    #[error("non-finite integrand value {value} at node {node}")]
    NonFinite { node: f64, value: f64 },

    #[error("found {found} zeros below {xmax}, {requested} requested")]
    InsufficientZeros { found: usize, requested: usize, xmax: f64 },

    #[error("no convergence after {0} iterations")]
    NoConvergence(usize),

    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
