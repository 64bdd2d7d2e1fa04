use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DvError {
    /// Malformed input text; `line` is 1-based.
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Input violates the problem's input contract (e.g. duplicate rows).
    #[error("contract error{}: {message}", line.map(|l| format!(" on line {l}")).unwrap_or_default())]
    Contract { line: Option<usize>, message: String },

    /// An argument lies outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A structural claim the algorithm relies on did not hold.
    #[error("structural check failed: {0}")]
    Structure(String),

    /// The instance is larger than the configured limits allow.
    #[error("refused: {0}")]
    Refused(String),

    #[error("io error: {0}")]
    Io(String),
}

impl DvError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        DvError::Domain(msg.into())
    }

    pub(crate) fn structure(msg: impl Into<String>) -> Self {
        DvError::Structure(msg.into())
    }
}

impl From<std::io::Error> for DvError {
    fn from(e: std::io::Error) -> Self {
        DvError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, DvError>;
