use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid grid spec: {0}")]
    InvalidSpec(String),

    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },

    #[error("fields live on different grids")]
    GridMismatch,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("grid has {len} nodes, naive DFT is limited to {limit}")]
    GridTooLarge { len: usize, limit: usize },

    #[error("result is not real: max |Im| = {max_im:e}, max |Re| = {max_re:e}")]
    SymmetryViolation { max_im: f64, max_re: f64 },

    #[error("Simpson quadrature needs an even interval count, axis {axis} has {intervals}")]
    OddIntervalCount { axis: usize, intervals: usize },

    #[error("noise level must be positive, got {0}")]
    NonPositiveDelta(f64),

    #[error("noise level {delta} exceeds the maximum noise level {delta_max}")]
    DeltaExceedsDeltaM { delta: f64, delta_max: f64 },

    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    #[error("invalid regularization config: {0}")]
    InvalidRegConfig(String),

    #[error("linear solve failed: {0}")]
    SingularSystem(String),

    #[error("slice at {axis}={coord} lies outside [{lower}, {upper}]")]
    SliceOutOfBox {
        axis: usize,
        coord: f64,
        lower: f64,
        upper: f64,
    },

    #[error("invalid config: {0}")]
    InvalidConfig(String),

    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error("io: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn at(self, stage: &'static str) -> Error {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
