use thiserror::Error;

/// Errors produced by graph construction, spectral decompositions, and
/// metric computations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("adjacency matrix is not square: {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("adjacency entry at ({row}, {col}) is not finite")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("graph too small: need at least 2 vertices, got {n}")]
    TooSmall { n: usize },

    #[error("spectral radius is numerically zero; cannot normalize")]
    ZeroSpectralRadius,

    #[error(
        "matrix is not numerically diagonalizable \
         (reconstruction residual {residual:e}, basis condition estimate {cond:e})"
    )]
    NotDiagonalizable { residual: f64, cond: f64 },

    #[error("invalid graph specification: {0}")]
    BadSpec(String),

    #[error("fractional order {alpha} outside the supported range |alpha| <= 8")]
    AlphaOutOfRange { alpha: f64 },

    #[error("zero eigenvalue raised to a non-positive fractional power")]
    ZeroEigenvalueNegativePower,

    #[error("Vandermonde system too ill-conditioned for a polynomial filter (cond {cond:e})")]
    IllConditionedVandermonde { cond: f64 },

    #[error("background responses are degenerate (zero spread or empty split)")]
    DegenerateBackground,

    #[error("k = {k} exceeds the number of nodes {n}")]
    KTooLarge { k: usize, n: usize },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("shape mismatch: expected {expected:?}, got {got:?}")]
    ShapeMismatch {
        expected: (usize, usize),
        got: (usize, usize),
    },

    #[error("empty parameter grid")]
    EmptyGrid,

    #[error("signal entry at index {index} is not finite")]
    NonFiniteSignal { index: usize },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("linear algebra backend failure: {0}")]
    Backend(String),
}

impl From<ndarray_linalg::error::LinalgError> for Error {
    fn from(e: ndarray_linalg::error::LinalgError) -> Self {
        Error::Backend(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
