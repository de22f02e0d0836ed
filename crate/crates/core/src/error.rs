use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("csv schema error at {location}: {message}")]
    Schema { location: String, message: String },

    #[error("degenerate split: {0}")]
    DegenerateSplit(String),

    #[error("neighbor graph is disconnected (component sizes: {sizes:?})")]
    DisconnectedGraph { sizes: Vec<usize> },

    #[error("rank-deficient data: requested {requested} components but achievable rank is {achievable}")]
    RankDeficient { requested: usize, achievable: usize },

    #[error("geodesic solver diverged at iteration {iteration}: {message}")]
    SolverDiverged { iteration: usize, message: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn schema(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            location: location.into(),
            message: message.into(),
        }
    }
}
