use thiserror::Error;

pub type Result<T> = std::result::Result<T, CliError>;

/// Errors surfaced by the command-line tools. Every variant maps to exit
/// code 1 (user error); internal panics are caught separately and map to 2.
#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed flags or flag combinations.
    #[error("{0}")]
    Usage(String),

    /// A file could not be read or written.
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    /// An input file violated its documented format.
    #[error("{path}:{line}: {message}")]
    Malformed {
        path: String,
        /// 1-based line number; 0 when no line applies.
        line: usize,
        message: String,
    },

    /// JSON input that did not deserialize.
    #[error("{path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },

    /// Failure raised by the analysis library.
    #[error(transparent)]
    Lib(#[from] pleader::Error),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn malformed(path: impl Into<String>, line: usize, message: impl Into<String>) -> Self {
        CliError::Malformed {
            path: path.into(),
            line,
            message: message.into(),
        }
    }
}
