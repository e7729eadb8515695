use chrono::NaiveDate;
use thiserror::Error;

/// Failures of the numerical and data-model layer.
///
/// Every variant is `Clone` so failed rolling windows can carry their error
/// as a gap record.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum HurstError {
    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error("insufficient data: need at least {needed} observations, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("non-positive {field} price {value} on {date}")]
    NonPositivePrice {
        field: &'static str,
        date: NaiveDate,
        value: f64,
    },

    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("dates not strictly increasing: {previous} followed by {current}")]
    Ordering {
        previous: NaiveDate,
        current: NaiveDate,
    },

    #[error("length mismatch: {0}")]
    LengthMismatch(String),

    #[error("window [{start}, {start}+{length}) out of bounds for series of length {len}")]
    Bounds {
        start: usize,
        length: usize,
        len: usize,
    },

    #[error("zero variance: {0}")]
    ZeroVariance(String),

    #[error("invalid scale: {0}")]
    Scale(String),

    #[error("degenerate fluctuation: F({scale}) = 0")]
    DegenerateFluctuation { scale: usize },

    #[error("singular polynomial fit in block {block} at scale {scale}")]
    SingularFit { block: usize, scale: usize },

    #[error("numerical error: {0}")]
    Numerical(String),
}

impl HurstError {
    /// Stable snake_case tag used in machine-readable error lines.
    pub fn kind(&self) -> &'static str {
        match self {
            HurstError::EmptyInput(_) => "empty_input",
            HurstError::InsufficientData { .. } => "insufficient_data",
            HurstError::NonPositivePrice { .. } => "non_positive_price",
            HurstError::NonFinite { .. } => "non_finite",
            HurstError::Domain(_) => "domain",
            HurstError::Ordering { .. } => "ordering",
            HurstError::LengthMismatch(_) => "length_mismatch",
            HurstError::Bounds { .. } => "bounds",
            HurstError::ZeroVariance(_) => "zero_variance",
            HurstError::Scale(_) => "scale",
            HurstError::DegenerateFluctuation { .. } => "degenerate_fluctuation",
            HurstError::SingularFit { .. } => "singular_fit",
            HurstError::Numerical(_) => "numerical",
        }
    }
}

pub type Result<T, E = HurstError> = std::result::Result<T, E>;

pub(crate) fn ensure_finite(values: &[f64]) -> Result<()> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(index) => Err(HurstError::NonFinite { index }),
        None => Ok(()),
    }
}
