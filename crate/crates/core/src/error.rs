use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Unsupported or inconsistent group selection / input.
    #[error("configuration error: {0}")]
    Config(String),
    /// A precondition of an operation was violated by the caller.
    #[error("contract violation: {0}")]
    Contract(String),
    /// A node, path, class or generation budget was exhausted.
    #[error("resource limit exceeded: {0}")]
    Budget(String),
    /// The requested case is outside what the engine implements.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// An internal certification failed (convention or consistency bug).
    #[error("certification failed: {0}")]
    Certification(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
