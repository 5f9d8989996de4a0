use thiserror::Error;

/// Errors produced by the spectral analysis pipeline.
#[derive(Debug, Error)]
pub enum DfcError {
    #[error("dimension mismatch: {left_height}x{left_width} vs {right_height}x{right_width}")]
    DimensionMismatch {
        left_height: usize,
        left_width: usize,
        right_height: usize,
        right_width: usize,
    },

    #[error("image must be at least {min}x{min} pixels, got {height}x{width}")]
    TooSmall {
        height: usize,
        width: usize,
        min: usize,
    },

    #[error("pixel buffer has {actual} values, expected {expected}")]
    BufferLength { expected: usize, actual: usize },

    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),

    #[error("image of {height}x{width} exceeds the brute-force DFT limit of {max}x{max}")]
    OracleSizeExceeded {
        height: usize,
        width: usize,
        max: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("band count mismatch: expected {expected}, got {actual}")]
    BandCountMismatch { expected: usize, actual: usize },

    #[error("total band ratio mass {total:e} is below threshold {threshold:e}; residual carries no degradation signal")]
    NoDegradationSignal { total: f64, threshold: f64 },

    #[error("{0}")]
    EmptyInput(&'static str),

    #[error("severity calibration is not strictly monotone")]
    NonMonotoneCalibration,

    #[error("unsupported image format: {0}")]
    UnsupportedImage(String),

    #[error(transparent)]
    Image(#[from] image::ImageError),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = DfcError> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> DfcError {
    DfcError::InvalidParameter(msg.into())
}
