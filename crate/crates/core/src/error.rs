use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the engine can report.
///
/// Variants split into two families: input/precondition problems (the caller
/// handed us something outside the contract) and internal invariant
/// violations (a bug). [`Error::is_internal`] tells them apart.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },

    #[error("invalid rational literal {0:?}")]
    BadRational(String),

    #[error("formula {expr:?}: {message}")]
    Formula { expr: String, message: String },

    #[error("natural density undefined for {0}")]
    DensityUndefined(String),

    #[error("index sets do not partition the naturals: {0}")]
    InvalidPartition(String),

    #[error("sequence is not bounded: {pattern} tends to {limit}")]
    UnboundedSequence { pattern: String, limit: String },

    #[error("declared limit {declared} does not match computed limit {computed}")]
    LimitMismatch { declared: String, computed: String },

    #[error("radius formula leaves the solvable fragment: {0}")]
    UnsolvableRadius(String),

    #[error("interval generator has a zero-length interval at n = {0}")]
    ZeroLengthInterval(u64),

    #[error("invalid interval generator: {0}")]
    InvalidGenerator(String),

    #[error("invalid set: {0}")]
    InvalidSet(String),

    #[error("invalid piecewise function: {0}")]
    InvalidFunction(String),

    #[error("density precondition failed: {0}")]
    PreconditionDensity(String),

    #[error("host set not suitable: {0}")]
    HostNotSuitable(String),

    #[error("point {0} lies in the closed set")]
    PointInClosedSet(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn parse(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            message: message.into(),
        }
    }

    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}
