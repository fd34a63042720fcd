use thiserror::Error;

/// Errors raised by support construction, assembly and extraction.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("disc at ({cx}, {cy}) with radius {r} is not contained in the domain")]
    Containment { cx: f64, cy: f64, r: f64 },

    #[error("invalid radius {0}: must be finite and positive")]
    InvalidRadius(f64),

    #[error("non-finite coordinate ({0}, {1})")]
    NonFinitePoint(f64, f64),

    #[error("orbit radius {0} appears more than once")]
    DuplicateOrbitRadius(f64),

    #[error("orbit schedule is malformed: {0}")]
    Schedule(String),

    #[error("affine map is degenerate (|det A| = {0:e})")]
    DegenerateMap(f64),

    #[error("affine map is not a similarity; discs would not map to discs")]
    NotSimilarity,

    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("supports are not unisolvent (relative smallest singular value {rcond:e})")]
    NotUnisolvent { rcond: f64 },

    #[error("candidate pool has numerical rank {rank} < {needed}")]
    PoolTooPoor { rank: usize, needed: usize },

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    #[error("empty input: {0}")]
    Empty(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
