use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension must be odd (got {0})")]
    EvenDimension(usize),

    #[error("dimension must be at least 3 (got {0})")]
    DimensionTooSmall(usize),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("state is not normalized (squared norm {0})")]
    NotNormalized(f64),

    #[error("state has zero norm")]
    ZeroVector,

    #[error("matrix is not unitary (max |UU^† - I| = {0:e})")]
    NotUnitary(f64),

    #[error("matrix is not Hermitian (max |A - A^†| = {0:e})")]
    NotHermitian(f64),

    #[error("trace is not 1 (got {0})")]
    TraceNotOne(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("probability {value:e} at index {index} is negative")]
    NegativeProbability { index: usize, value: f64 },

    #[error("probabilities sum to {0}, not 1")]
    ProbabilitySum(f64),

    #[error("mixing weight {0} outside [0, 1]")]
    WeightOutOfRange(f64),

    #[error("fiducial coincides with a position or momentum state (overlap {0})")]
    DegenerateFiducial(f64),

    #[error("search budget too small: restarts and iterations must be at least 1")]
    BudgetTooSmall,

    #[error("invalid state file: {0}")]
    StateFile(String),
}
