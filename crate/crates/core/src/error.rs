use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unnormalizable: amplitude vector has zero norm")]
    Unnormalizable,
    #[error("amplitude vector length {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("state norm {norm} deviates from 1 by more than {tolerance} (use the normalize option to rescale)")]
    NormMismatch { norm: f64, tolerance: f64 },
    #[error("non-finite amplitude at index {0}")]
    NonFinite(usize),
    #[error("width mismatch: expected {expected}, found {found}")]
    WidthMismatch { expected: usize, found: usize },
    #[error("an ensemble needs at least {min} states, got {found}")]
    EnsembleTooSmall { min: usize, found: usize },
    #[error("register count {0} is not a power of two >= 4 (pad the ensemble first)")]
    InvalidRegisterCount(usize),
    #[error("malformed gate: {0}")]
    InvalidGate(String),
    #[error("{qubits} qubits exceed the statevector cap of {cap}; use the oracle engine for this size")]
    QubitCapExceeded { qubits: usize, cap: usize },
    #[error("circuit has no measured qubits")]
    EmptyMeasurement,
    #[error("measurement label {0:?} declared twice")]
    DuplicateLabel(String),
    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),
    #[error("shot count must be at least 1")]
    ZeroShots,
    #[error("malformed bit layout: {0}")]
    MalformedBits(String),
    #[error("layout mismatch: expected [{expected}], found [{found}]")]
    LayoutMismatch { expected: String, found: String },
    #[error("pair ({0}, {1}) is not covered by any ancilla outcome")]
    UncoveredPair(usize, usize),
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }

    /// Errors caused by the invocation rather than by the data it points at.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::Config(_) | Error::ZeroShots | Error::QubitCapExceeded { .. }
        )
    }
}
