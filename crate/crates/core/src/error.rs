use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid matchgate{}: {reason}", .index.map(|i| format!(" at gate {i}")).unwrap_or_default())]
    InvalidMatchgate { index: Option<usize>, reason: String },

    #[error("gate {index} on qubit {qubit} does not fit a {num_qubits}-qubit register")]
    QubitOutOfRange {
        index: usize,
        qubit: usize,
        num_qubits: usize,
    },

    #[error("not a rotation: {0}")]
    NotRotation(String),

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("{what} limited to {limit}, got {requested}")]
    Capacity {
        what: &'static str,
        limit: usize,
        requested: usize,
    },

    #[error("function is not a linear threshold gate")]
    NotLtg,

    #[error("representation is not normalized (‖w‖₁ + |θ| = {norm}); divide by the norm first")]
    NotNormalized { norm: f64 },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("linear program failed: {0}")]
    Lp(String),

    #[error("verification failed: {0}")]
    Verification(String),
}

/// Coarse classification, used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    InvalidInput,
    Capacity,
    Verification,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Capacity { .. } => ErrorKind::Capacity,
            Error::Lp(_) | Error::Verification(_) => ErrorKind::Verification,
            _ => ErrorKind::InvalidInput,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Invalid(e.to_string())
    }
}
