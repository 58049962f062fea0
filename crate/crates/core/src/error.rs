use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Broad failure categories. The CLI maps these onto process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Validation,
    NonConvergence,
    Io,
}

impl ErrorKind {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Validation => 1,
            ErrorKind::NonConvergence => 2,
            ErrorKind::Io => 3,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ErrorKind::Validation => "validation",
            ErrorKind::NonConvergence => "non-convergence",
            ErrorKind::Io => "io",
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("point ({x}:{y}:{z}) lies on the excluded hyperplane z = 0")]
    OnHyperplane { x: f64, y: f64, z: f64 },

    #[error("non-finite coordinate in ({x}:{y}:{z})")]
    NonFinite { x: f64, y: f64, z: f64 },

    #[error("degenerate interval: lower bound {lo} is not strictly below upper bound {hi}")]
    DegenerateInterval { lo: f64, hi: f64 },

    #[error("theta must be a positive finite number, got {0}")]
    NonPositiveTheta(f64),

    #[error("sampled graphs are defined on different grids")]
    GridMismatch,

    #[error("sampled graph needs at least 2 nodes with strictly increasing abscissae")]
    InvalidGraph,

    #[error("need at least 3 data points (N >= 2), got {0}")]
    TooFewPoints(usize),

    #[error("abscissa ordering violated between data points {index} and {next}", next = index + 1)]
    Ordering { index: usize },

    #[error("map index {n} out of range 1..={count}")]
    MapIndex { n: usize, count: usize },

    #[error("expected {expected} scale factors for {points} data points, got {got}")]
    ScaleArity {
        expected: usize,
        got: usize,
        points: usize,
    },

    #[error("scale factor d_{n} = {value} must satisfy |d| < 1")]
    ScaleOutOfRange { n: usize, value: f64 },

    #[error("scale factor d_{n} is zero; enable degenerate scales to allow singular maps")]
    ZeroScale { n: usize },

    #[error("grid is not aligned with the data abscissae: {0}")]
    GridAlignment(String),

    #[error("point {0} lies outside the interpolation interval")]
    OutsideInterval(f64),

    #[error("point cloud would grow to {size} points, above the cap of {cap}")]
    SizeCap { size: usize, cap: usize },

    #[error("point cloud is empty")]
    EmptyCloud,

    #[error("slice level z0 must be nonzero")]
    ZeroLevel,

    #[error("degenerate viewport: {0}")]
    DegenerateViewport(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("config parse error at line {line}, column {column}: {message}")]
    ConfigParse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid config field `{field}`: {message}")]
    ConfigField { field: String, message: String },

    #[error(
        "fixed-point iteration did not converge after {iterations} iterations (last delta {last_delta:e})"
    )]
    NotConverged { iterations: usize, last_delta: f64 },

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::NotConverged { .. } => ErrorKind::NonConvergence,
            Error::Io { .. } => ErrorKind::Io,
            _ => ErrorKind::Validation,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn field(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::ConfigField {
            field: field.into(),
            message: message.into(),
        }
    }
}
