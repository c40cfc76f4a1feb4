use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An exponential routine refused an input beyond its configured limit.
    #[error("{what}: size {actual} exceeds limit {limit}")]
    SizeCap {
        what: String,
        limit: u64,
        actual: u64,
    },

    /// More maximal cliques through a vertex than the caller allowed.
    #[error("vertex {vertex} lies in more than {cap} maximal cliques")]
    CliqueCapExceeded { vertex: usize, cap: usize },

    #[error("bag {bag} contains an independent set of size {found}, above the bound {alpha}")]
    AlphaViolation {
        bag: usize,
        alpha: usize,
        found: usize,
    },

    #[error("weight overflow")]
    WeightOverflow,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A produced witness or certificate failed re-validation.
    #[error("internal validation failed: {0}")]
    Validation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn cap(what: impl Into<String>, limit: u64, actual: u64) -> Self {
        Error::SizeCap {
            what: what.into(),
            limit,
            actual,
        }
    }
}
