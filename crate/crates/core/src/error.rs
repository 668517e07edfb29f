use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("matrix is not tridiagonal: entry ({row}, {col}) = {value}")]
    NotTridiagonal { row: usize, col: usize, value: f64 },

    #[error("unsupported gate: {0}")]
    UnsupportedGate(String),

    #[error("too many qubits for a dense unitary: {0} > {max}", max = crate::compiler::MAX_UNITARY_QUBITS)]
    TooManyQubits(usize),

    #[error("term {0} is not measurable in the Z, X or Y product bases")]
    UncoverableTerm(String),

    #[error("no histogram for the {0} measurement setting")]
    MissingSetting(String),

    #[error("empty histogram")]
    EmptyHistogram,

    #[error("singular confusion matrix on qubit {0}")]
    SingularConfusion(usize),

    #[error("underdetermined fit: {points} points for {params} parameters")]
    Underdetermined { points: usize, params: usize },

    #[error("quadratic fit is not convex (leading coefficient {0})")]
    ConcaveFit(f64),

    #[error("eigensolver did not converge after {0} iterations")]
    NoConvergence(usize),

    #[error("parse error in {context}: {message}")]
    Parse { context: String, message: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit status for this error class: 2 usage, 3 numerical, 4 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidArgument(_)
            | Error::DimensionMismatch { .. }
            | Error::NotTridiagonal { .. }
            | Error::UnsupportedGate(_)
            | Error::TooManyQubits(_)
            | Error::UncoverableTerm(_)
            | Error::MissingSetting(_)
            | Error::Parse { .. } => 2,
            Error::EmptyHistogram
            | Error::SingularConfusion(_)
            | Error::Underdetermined { .. }
            | Error::ConcaveFit(_)
            | Error::NoConvergence(_) => 3,
            Error::Json(_) | Error::Io(_) => 4,
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
