use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("metric {metric} is declared for {declared} but was applied to {requested}")]
    MetricSpace {
        metric: String,
        declared: &'static str,
        requested: &'static str,
    },

    #[error("empty input: {0}")]
    Empty(String),

    /// Argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported theory: {0}")]
    UnsupportedTheory(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("line {line}: {field}: {message}")]
    Parse {
        line: u64,
        field: String,
        message: String,
    },

    #[error("singular system: {0}")]
    Singular(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::InvalidConfig(msg.into())
    }

    pub(crate) fn empty(msg: impl Into<String>) -> Self {
        Error::Empty(msg.into())
    }

    pub(crate) fn parse(line: u64, field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            field: field.into(),
            message: message.into(),
        }
    }

    /// True for errors caused by malformed input documents rather than by
    /// numeric domain violations.
    pub fn is_schema_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::Json(_)
                | Error::Csv(_)
                | Error::InvalidConfig(_)
                | Error::UnsupportedTheory(_)
                | Error::MetricSpace { .. }
        )
    }
}
