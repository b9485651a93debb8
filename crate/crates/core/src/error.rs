use thiserror::Error;

/// Errors raised by the simulator and its combinatorial substrate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid partition {parts:?}: {reason}")]
    InvalidPartition { parts: Vec<usize>, reason: String },

    #[error("box ({row}, {col}) lies outside shape {shape}")]
    ShapeMismatch { shape: String, row: usize, col: usize },

    #[error("shape {shape} has more than {d} parts and is not admissible for local dimension {d}")]
    SectorInadmissible { shape: String, d: usize },

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("not a bijection: {0:?}")]
    NotBijective(Vec<usize>),

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("space dimension {d}^{n} exceeds the cap of {cap}")]
    CapExceeded { n: usize, d: usize, cap: usize },

    #[error("n = {n} exceeds the symmetric-group summation limit of {limit}")]
    TooManySites { n: usize, limit: usize },

    #[error("operator is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("operator is not diagonal (max off-diagonal magnitude {magnitude:e})")]
    NotDiagonal { magnitude: f64 },

    #[error("state is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("operation requires d = 2, got d = {0}")]
    UnsupportedDimension(usize),

    #[error("epsilon {epsilon} outside (0, {bound})")]
    EpsilonOutOfRange { epsilon: f64, bound: f64 },

    #[error("invalid problem spec: {0}")]
    InvalidSpec(String),

    #[error("construction failed: {0}")]
    ConstructionFailure(String),

    #[error("problem Hamiltonian is not invariant under site permutation {permutation:?}")]
    SymmetryViolation { permutation: Vec<usize> },
}

pub type Result<T> = std::result::Result<T, Error>;
