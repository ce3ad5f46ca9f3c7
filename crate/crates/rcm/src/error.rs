//! Error type shared across the crate.

use thiserror::Error;

/// Library-wide error. The variants map onto the distinct failure classes a
/// caller may want to tell apart: bad input, a blown enumeration budget, and
/// a genuinely divergent integral.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A precondition on the inputs was violated.
    #[error("domain error: {0}")]
    Domain(String),
    /// The ground set is larger than the configured enumeration limit.
    #[error("resource limit exceeded: ground set has {size} elements, limit is {limit}")]
    GroundSetTooLarge { size: usize, limit: usize },
    /// A Gaussian integral that does not converge (singular quadratic form).
    #[error("divergent integral: {0}")]
    Divergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn divergence(msg: impl Into<String>) -> Self {
        Error::Divergence(msg.into())
    }
}
