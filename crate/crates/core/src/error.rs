use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A requested table or enumeration would exceed the configured cap.
    #[error("requested limit {requested} exceeds capacity cap {cap}")]
    Capacity { requested: u64, cap: u64 },

    /// An argument lies outside the range covered by a sieved table.
    #[error("argument {value} out of table range (limit {limit})")]
    OutOfRange { value: u64, limit: u64 },

    /// A precondition on the mathematical domain was violated. The message
    /// names the violated constraint.
    #[error("{0}")]
    Domain(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
