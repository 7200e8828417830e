use thiserror::Error;

/// Errors raised by the numerical kernels and the file readers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("malformed scalar literal {0:?}")]
    MalformedScalar(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("node set is empty")]
    EmptyNodes,
    #[error("node t{index} = {value} lies outside the open interval (0, 1)")]
    NodeOutOfRange { index: usize, value: String },
    #[error("nodes are not strictly increasing: t{first} = {first_value} >= t{second} = {second_value}")]
    NodesNotIncreasing {
        first: usize,
        first_value: String,
        second: usize,
        second_value: String,
    },
    #[error("index {index} out of range for {what} (valid: {valid})")]
    IndexOutOfRange {
        what: &'static str,
        index: String,
        valid: String,
    },
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("zero pivot at step {step}: elimination would need a row exchange")]
    ExchangeRequired { step: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("invalid bidiagonal decomposition: {0}")]
    InvalidBd(String),
    #[error("QR iteration did not converge for eigenvalue {index} after {iterations} iterations")]
    NoConvergence { index: usize, iterations: usize },
    #[error("trailing 2x2 block has complex eigenvalues at index {index}")]
    ComplexPair { index: usize },
    #[error("eigenvalue {index} = {value} is not strictly positive")]
    NonPositiveEigenvalue { index: usize, value: f64 },
    #[error("{0} produced a non-finite value")]
    NonFinite(&'static str),
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("order {order} exceeds the oracle size cap of {cap}")]
    OracleSizeCap { order: usize, cap: usize },
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
