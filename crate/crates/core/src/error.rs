use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("basis rows are linearly dependent (rank {rank} < {rows})")]
    RankDeficient { rank: usize, rows: usize },

    #[error("operation requires a square basis, got {rows}x{cols}")]
    UnsupportedRank { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("enumeration budget exceeded: more than {cap} points within squared radius {radius}")]
    EnumerationBudget { cap: usize, radius: f64 },

    #[error("coarse lattice is not contained in the fine lattice")]
    NotSublattice,

    #[error("quotient of index {0} is not a power of two")]
    UnsupportedQuotient(String),

    #[error("scale factors differ by an odd power of sqrt(2); no rational coordinate change exists")]
    IncompatibleScale,

    #[error("q must lie in (0, 1), got {0}")]
    Domain(f64),

    #[error("{0}")]
    InvalidArgument(String),

    #[error("bit length mismatch: expected {expected}, got {got}")]
    BitLength { expected: usize, got: usize },

    #[error("lattice {0} has no known multiplicative symmetry point; use the strong secrecy gain")]
    RequiresSymmetry(String),

    #[error("unknown name: {0}")]
    UnknownName(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
