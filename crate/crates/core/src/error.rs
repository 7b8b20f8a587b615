use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("empty point set")]
    EmptySet,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("dimension {0} exceeds the supported maximum of {max}", max = crate::geometry::MAX_DIM)]
    DimensionTooLarge(usize),
    #[error("cone basis is linearly dependent (smallest singular value {0:e})")]
    DependentBasis(f64),
    #[error("cone basis is empty")]
    EmptyBasis,
    #[error("basis has {n} vectors in dimension {m}; need m >= n")]
    TooManyBasisVectors { n: usize, m: usize },
    #[error("point is outside the span of the cone basis (residual {0:e})")]
    OutsideSpan(f64),
    #[error("point is outside the cone (coordinate {index} = {value:e})")]
    OutsideCone { index: usize, value: f64 },
    #[error("resolution must be at least 2, got {0}")]
    Resolution(usize),
    #[error("simplex grid with {0} points is too large")]
    GridTooLarge(u128),
    #[error("enumeration of {0} selection matrices exceeds the cap")]
    EnumerationCap(u128),
    #[error("correspondence is not an endomorphism of its cone")]
    NotEndomorphism,
    #[error("cone mismatch: {0}")]
    ConeMismatch(String),
    #[error("norm evaluation overflowed (value {0:e}); correspondence appears unbounded")]
    Unbounded(f64),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("linear program failed: {0}")]
    LinearProgram(String),
}
