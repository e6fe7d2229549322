use thiserror::Error;

/// Errors produced by entropy computations, source models and the CLI.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input: negative atoms, bad lengths, invalid chains, bad flags.
    #[error("validation error: {0}")]
    Validation(String),

    /// Input is well-formed but outside the domain of the operation
    /// (empty or all-zero distribution, empty spectrum).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported order: {0}")]
    UnsupportedOrder(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    /// A size bound (alphabet, block length, matrix dimension) was exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub(crate) fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Numerical(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
