use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// Two objects that must share a ground set do not.
    #[error("ground-set mismatch: expected n={expected}, found n={found}")]
    SizeMismatch { expected: usize, found: usize },

    /// A parameter or value violates the operation's preconditions.
    #[error("invalid input: {0}")]
    Input(String),

    /// A text array could not be parsed.
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// The operation would need more memory than the configured cap.
    #[error("{what} needs {required} bytes, above the cap of {cap} bytes")]
    Resource { what: String, required: u128, cap: u128 },

    /// An input failed a checked mathematical precondition (e.g. is not perfect).
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// Indicates a bug: an invariant that the code guarantees did not hold.
    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn input_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
