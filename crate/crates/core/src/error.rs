use std::fmt;

/// Row/column shape of a matrix, used in error reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shape(pub usize, pub usize);

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.0, self.1)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("precision must be at least 2 bits, got {0}")]
    InvalidPrecision(u32),

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("logarithm of zero")]
    LogOfZero,

    #[error("gamma function pole at {0}")]
    Pole(String),

    #[error("shape mismatch: {left} vs {right} ({op})")]
    Shape {
        op: &'static str,
        left: Shape,
        right: Shape,
    },

    #[error("matrix is singular to working precision (column {column})")]
    Singular { column: usize },

    #[error("matrix is not Hermitian (anti-Hermitian part {deviation:e} relative)")]
    NotHermitian { deviation: f64 },

    #[error("eigenvector {index} failed to converge")]
    ConvergenceFailure { index: usize },

    #[error("QR iteration did not converge after {iterations} sweeps")]
    QrFailure { iterations: usize },

    #[error("gate matrix is not unitary (deviation {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("state of {qubits} qubits is too large to expand (limit {limit})")]
    Capacity { qubits: usize, limit: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
