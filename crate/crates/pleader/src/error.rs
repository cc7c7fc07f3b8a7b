use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by synthesis, transforms and estimation.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument was outside its documented domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Input data contained NaN or infinite values.
    #[error("non-finite value in {context} at index {index}")]
    NonFinite { context: &'static str, index: usize },

    /// Requested more decomposition octaves than the signal supports.
    #[error("requested {requested} octaves but at most {max_feasible} are feasible for length {len} with a {filter_len}-tap filter")]
    DepthTooLarge {
        requested: usize,
        max_feasible: usize,
        len: usize,
        filter_len: usize,
    },

    /// Signal length must be divisible by 2^octaves for the periodic transform.
    #[error("signal length {len} is not divisible by 2^{octaves}")]
    LengthNotDyadic { len: usize, octaves: usize },

    /// Daubechies filters are implemented for 1..=10 vanishing moments.
    #[error("unsupported number of vanishing moments: {0} (supported: 1..=10)")]
    UnsupportedVanishingMoments(usize),

    /// A regression range retained fewer than two octaves.
    #[error("regression range [{j1}, {j2}] retains {available} octaves; at least 2 are required")]
    RegressionRange { j1: usize, j2: usize, available: usize },

    /// Too many exactly-zero leaders at one octave for negative moments or
    /// log-cumulants to be meaningful.
    #[error("octave {octave}: {zeros} of {total} leaders are exactly zero (> 1% threshold)")]
    DegenerateLeaders { octave: usize, zeros: usize, total: usize },

    /// Coefficient structure functions are defined for non-negative moments only.
    #[error("coefficient structure functions require q >= 0 (got q = {0})")]
    NegativeMomentOnCoefficients(f64),

    /// Circulant embedding stayed non-positive-definite after growing.
    #[error("circulant embedding not positive semi-definite after growing to {max_size} points (most negative eigenvalue {min_eigenvalue:e})")]
    EmbeddingNotPsd { max_size: usize, min_eigenvalue: f64 },

    /// Mismatched dimensions between cooperating values.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// Underlying I/O failure (harness outputs).
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    /// JSON (de)serialization failure.
    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
