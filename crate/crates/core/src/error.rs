use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An element index or set member lies outside the carrier.
    #[error("malformed input: {0}")]
    Malformed(String),

    /// A documented precondition of an operation does not hold.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The requested computation exceeds an enumeration cap.
    #[error("capacity exceeded: {what} has size {size}, cap is {cap}")]
    Capacity {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    /// Text input could not be parsed.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// A result that the theory guarantees failed its own post-check.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn capacity(what: &'static str, size: usize, cap: usize) -> Result<()> {
    if size > cap {
        Err(Error::Capacity { what, size, cap })
    } else {
        Ok(())
    }
}
