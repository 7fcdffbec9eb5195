use thiserror::Error;

use crate::gap::GapCertificate;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A documented precondition of the called operation does not hold.
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("ordering has a gap: {0}")]
    GapPresent(GapCertificate),

    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),

    #[error("no admissible weight for position {position}")]
    EmptyInterval { position: usize },

    #[error("weight synthesis failed: {0}")]
    SynthesisFailure(String),

    #[error("instance has {n} elements, brute force limit is {limit}")]
    LimitExceeded { n: usize, limit: usize },

    #[error("malformed witness: {0}")]
    Witness(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
