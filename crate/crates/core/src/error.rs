use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(i64),

    #[error("ball depth {depth} exceeds the limit of {limit}")]
    DepthTooLarge { depth: usize, limit: usize },

    #[error("operation needs a fully explored graph; {0} vertices are incomplete")]
    IncompleteGraph(usize),

    #[error("loop witness must be a nonempty word")]
    EmptyWitness,

    #[error("loop witness {0} is not cyclically reduced")]
    NotCyclicallyReduced(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("malformed graph document: {0}")]
    GraphFormat(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }
}
