use thiserror::Error;

/// Errors raised by state construction, device evaluation, and estimation.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An input lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Inputs are formally valid but leave the operation with nothing to
    /// work with (e.g. every outcome probability is zero).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A numerical procedure failed to converge or produced non-finite
    /// values; the message carries diagnostics.
    #[error("numeric failure: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn degenerate(msg: impl Into<String>) -> Self {
        Error::Degenerate(msg.into())
    }

    pub fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric(msg.into())
    }
}
