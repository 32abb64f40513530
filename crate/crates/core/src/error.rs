use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("qubit count {0} outside supported range 1..={max}", max = crate::MAX_QUBITS)]
    QubitCount(usize),
    #[error("malformed basis label {0:?}")]
    BadLabel(String),
    #[error("qubit index {index} out of range for {num_qubits}-qubit state")]
    QubitIndex { index: usize, num_qubits: usize },
    #[error("gate matrix is not unitary (max deviation {0:.3e})")]
    NotUnitary(f64),
    #[error("invalid gate: {0}")]
    InvalidGate(String),
    #[error("unknown gate {0:?}")]
    UnknownGate(String),
    #[error("state is not normalized (norm^2 = {0})")]
    NotNormalized(f64),
    #[error("amplitude at index {0} is not finite")]
    NonFinite(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("expected a {expected}-qubit state, found {found} qubits")]
    WrongQubitCount { expected: usize, found: usize },
    #[error("phase at index {0} does not have unit modulus")]
    NotUnitModulus(usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
