use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} qubits, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{qubits} qubits exceeds the dense-matrix limit of {limit}")]
    DenseLimit { qubits: usize, limit: usize },

    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("cannot parse Pauli string {input:?}: {reason}")]
    PauliParse { input: String, reason: String },

    #[error("generator set invalid: {0}")]
    InvalidGenerators(String),

    #[error("invalid code: {}", .0.join("; "))]
    InvalidCode(Vec<String>),

    #[error("code file line {line}: {reason}")]
    CodeFormat { line: usize, reason: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown code {0:?}")]
    UnknownCode(String),

    #[error("qubit supports overlap on joint qubit {0}")]
    OverlappingSupports(usize),

    #[error("eigenphase {phase:.6} is within {margin:e} of the branch cut; use a smaller T")]
    BranchCut { phase: f64, margin: f64 },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("fit needs at least 3 usable points, {0} survived the floor")]
    TooFewPoints(usize),

    #[error("sequence format: {0}")]
    SequenceFormat(String),
}

impl Error {
    /// True for refusals caused by size caps rather than bad input.
    pub fn is_resource_refusal(&self) -> bool {
        matches!(self, Error::DenseLimit { .. } | Error::ResourceLimit(_))
    }
}
