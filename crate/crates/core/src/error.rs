use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("non-finite color component")]
    NonFiniteColor,

    #[error("colormap needs at least 2 keys, got {0}")]
    TooFewKeys(usize),
    #[error("duplicate key position {0}")]
    DuplicateKeyPosition(f64),
    #[error("key positions must be strictly increasing (key {index} at {position})")]
    UnorderedKeys { index: usize, position: f64 },
    #[error("key position {0} is not finite")]
    NonFiniteKeyPosition(f64),
    #[error("colormap range [{min}, {max}] does not match first/last key positions")]
    RangeMismatch { min: f64, max: f64 },

    #[error("unknown test function `{0}`")]
    UnknownFunction(String),
    #[error("unknown parameter `{name}` for function `{function}`")]
    UnknownParameter { function: String, name: String },
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: String, reason: String },

    #[error("field dimensions must be positive (got {width}x{height})")]
    InvalidDimensions { width: usize, height: usize },
    #[error("field contains a non-finite value at index {0}")]
    NonFiniteValue(usize),
    #[error("degenerate domain: extents must be finite and non-zero")]
    DegenerateDomain,
    #[error("expected {expected} values, got {actual}")]
    ShapeMismatch { expected: usize, actual: usize },
    #[error("field dimensions differ: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("pixel ({i}, {j}) outside {width}x{height} field")]
    OutOfBounds { i: usize, j: usize, width: usize, height: usize },

    #[error("custom normalization maximum must be positive, got {0}")]
    InvalidCustomMax(f64),
    #[error("replacement noise requires a range n_min < n_max")]
    MissingReplacementRange,
    #[error("field range requires m < M (got [{0}, {1}])")]
    InvalidFieldRange(f64, f64),
}

impl Error {
    pub(crate) fn param(name: &str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter { name: name.into(), reason: reason.into() }
    }
}
