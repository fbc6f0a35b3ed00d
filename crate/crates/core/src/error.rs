use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument violated an operation's precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// Exact integer arithmetic would have wrapped.
    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    /// A dense or grid allocation would exceed the configured cap.
    #[error("resource limit: {what} needs {requested} entries, cap is {cap}")]
    Resource {
        what: &'static str,
        requested: u128,
        cap: u128,
    },

    /// An iterative or tolerance-gated routine did not reach its target.
    #[error("{what} did not converge: residual {residual:e} > tolerance {tolerance:e}")]
    Convergence {
        what: &'static str,
        residual: f64,
        tolerance: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
