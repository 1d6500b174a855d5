use thiserror::Error;

/// Errors raised by validation and by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("coordinate {index} is negative ({value})")]
    NegativeCoordinate { index: usize, value: f64 },
    #[error("coordinate {index} is not finite ({value})")]
    NonFinite { index: usize, value: f64 },
    #[error("coordinates sum to {sum}, expected {scale} (relative tolerance {tol:e})")]
    SumMismatch { sum: f64, scale: f64, tol: f64 },
    #[error("dimension {n} is below the minimum of {min}")]
    DimensionTooSmall { n: usize, min: usize },
    #[error("dimension {n} exceeds the maximum of {max}")]
    DimensionTooLarge { n: usize, max: usize },
    #[error("scale must be positive and finite, got {0}")]
    NonPositiveScale(f64),
    #[error("support must be strictly increasing (x[{index}] = {value} does not exceed its predecessor)")]
    SupportNotIncreasing { index: usize, value: f64 },
    #[error("operands differ in shape: n = {left_n}, u = {left_u} vs n = {right_n}, u = {right_u}")]
    ShapeMismatch {
        left_n: usize,
        left_u: f64,
        right_n: usize,
        right_u: f64,
    },
    #[error("last coordinate of the dominating point equals the scale; reduction is undefined")]
    ScaleExhausted,
    #[error("tail sum T_{index} is zero, the upper-set product is 0/0")]
    DegenerateTail { index: usize },
    #[error("input list is empty")]
    EmptyInput,
    #[error("{count} lattice points exceed the cap of {cap}")]
    CapExceeded { count: u128, cap: u64 },
    #[error("confidence must lie strictly between 0 and 1, got {0}")]
    InvalidConfidence(f64),
    #[error("sample count must be at least 1")]
    NoSamples,
    #[error("chunk size must be at least 1")]
    InvalidChunkSize,
    #[error("{0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable variant name, used by the CLI when reporting validation failures.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NegativeCoordinate { .. } => "NegativeCoordinate",
            Error::NonFinite { .. } => "NonFinite",
            Error::SumMismatch { .. } => "SumMismatch",
            Error::DimensionTooSmall { .. } => "DimensionTooSmall",
            Error::DimensionTooLarge { .. } => "DimensionTooLarge",
            Error::NonPositiveScale(_) => "NonPositiveScale",
            Error::SupportNotIncreasing { .. } => "SupportNotIncreasing",
            Error::ShapeMismatch { .. } => "ShapeMismatch",
            Error::ScaleExhausted => "ScaleExhausted",
            Error::DegenerateTail { .. } => "DegenerateTail",
            Error::EmptyInput => "EmptyInput",
            Error::CapExceeded { .. } => "CapExceeded",
            Error::InvalidConfidence(_) => "InvalidConfidence",
            Error::NoSamples => "NoSamples",
            Error::InvalidChunkSize => "InvalidChunkSize",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
