use thiserror::Error;

/// Errors raised by the geometric routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("radius must be positive and finite, got {0}")]
    NonPositiveRadius(f64),

    #[error("coordinates must be finite")]
    NonFiniteCoordinate,

    #[error("a disk system needs at least one disk")]
    EmptySystem,

    #[error("axis {axis} out of range for dimension {dim}")]
    AxisOutOfRange { axis: usize, dim: usize },

    #[error("the two boundaries coincide (identical disks)")]
    CoincidentBoundaries,

    #[error("degenerate configuration: Gram system of size {size} has rank {rank}")]
    DegenerateConfiguration { rank: usize, size: usize },

    #[error("subset of {got} disks is outside the supported range {min}..={max}")]
    InvalidSubsetSize { got: usize, min: usize, max: usize },

    #[error("sphere must have exactly {expected} normal(s), found {found}")]
    NormalCount { expected: usize, found: usize },

    #[error("scale factor must be positive and finite, got {0}")]
    InvalidScale(f64),

    #[error("precision must be positive and finite, got {0}")]
    InvalidPrecision(f64),

    #[error("tolerance must be non-negative and finite, got {0}")]
    InvalidTolerance(f64),

    #[error("max dimension {max_dim} exceeds m - 1 = {limit}")]
    MaxDimensionTooLarge { max_dim: usize, limit: usize },

    #[error("cannot intersect an empty list of boxes")]
    EmptyBoxList,
}

pub type Result<T, E = GeometryError> = std::result::Result<T, E>;
