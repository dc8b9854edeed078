use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid dimension {dim}: must be between 1 and {max}", max = crate::geometry::MAX_DIM)]
    InvalidDimension { dim: usize },

    #[error("coordinates must be finite")]
    NonFiniteCoordinate,

    #[error("points and labels differ in length ({points} points, {labels} labels)")]
    LengthMismatch { points: usize, labels: usize },

    /// Two points share a location but carry different labels. The
    /// nearest-neighbor rule is undefined on such data.
    #[error("points {i} and {j} share coordinates but have different labels")]
    DuplicateConflict { i: usize, j: usize },

    /// Two points of different classes are closer than the duplicate
    /// tolerance; sphere inversion around one of them is ill-conditioned.
    #[error("coincident points: two points of different classes share a location")]
    CoincidentPoints,

    #[error("point set is empty")]
    EmptySet,

    #[error("index {index} out of range for set of size {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
}
