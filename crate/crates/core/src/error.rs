use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("resource limit: {0}")]
    Resource(String),

    #[error("resolution insufficient: {0}")]
    ResolutionInsufficient(String),

    #[error("cover does not cover point {point}")]
    NotCovering { point: usize },

    #[error("precondition violated at point {point}: {reason}")]
    Precondition { point: usize, reason: String },

    #[error("horizon exhausted at point {point}: {reason}")]
    HorizonExhausted { point: usize, reason: String },

    #[error("invariant broken: {0}")]
    Invariant(String),

    #[error("game error: {0}")]
    Game(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Point carried by errors that name a concrete sample point.
    pub fn point(&self) -> Option<usize> {
        match self {
            Error::NotCovering { point }
            | Error::Precondition { point, .. }
            | Error::HorizonExhausted { point, .. } => Some(*point),
            _ => None,
        }
    }

    /// Input/usage errors as opposed to failed mathematical checks.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::InvalidInput(_)
                | Error::Parse(_)
                | Error::Io(_)
                | Error::Json(_)
                | Error::Resource(_)
        )
    }
}
