use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The graph has no M-cut at all (complete graphs, or no cut satisfies the model).
    #[error("no cut exists: {0}")]
    NoCutExists(String),

    /// A construction or certificate failed to re-validate against the graph.
    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    /// Lower-bound certificates for MM* with g < 2 need a separate no-isolated-survivor argument.
    #[error("MM* lower bound with g = {g} needs an isolation argument; the connectivity certificate alone is not sufficient")]
    NeedsIsolationArgument { g: usize },

    #[error("parameters {params} outside the validity range of `{id}`: {range}")]
    OutOfRange { id: String, params: String, range: String },

    #[error("unknown formula id `{0}`")]
    UnknownFormula(String),

    #[error("malformed graph document: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
