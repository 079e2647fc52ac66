use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument `{field}`: {reason}")]
    InvalidArgument { field: &'static str, reason: String },

    #[error("node index {index} out of range {lo}..={hi}")]
    IndexOutOfRange { index: usize, lo: usize, hi: usize },

    #[error("non-finite {what} at node {node}")]
    NonFinite { what: &'static str, node: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("singular system: zero pivot in column {pivot}")]
    Singular { pivot: usize },

    #[error(
        "fixed-point iteration did not converge after {iterations} iterations \
         (last increment {increment:e}); the coupling is probably not a contraction"
    )]
    NotConverged {
        iterations: usize,
        increment: f64,
        last: Vec<f64>,
    },

    #[error("study cell (epsilon = {epsilon:e}, N = {n}) failed: {source}")]
    StudyCell {
        epsilon: f64,
        n: usize,
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidArgument {
            field,
            reason: reason.into(),
        }
    }
}
