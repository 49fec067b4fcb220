use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{}: {cause}", path.display())]
    Io { path: PathBuf, cause: std::io::Error },

    /// A malformed line in a text format (annotated document, manifest,
    /// model file). `line` is 1-based.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A parse or validation error attributed to a specific file.
    #[error("{}: {cause}", path.display())]
    InFile { path: PathBuf, cause: Box<Error> },

    #[error("{0}")]
    Validation(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },

    #[error(
        "schema hash mismatch: model was built with schema {model_hash}, \
         current schema is {current_hash}; retrain the model with this schema"
    )]
    SchemaMismatch {
        model_hash: String,
        current_hash: String,
    },

    /// Chunk-level markers need shallow-parse annotations.
    #[error(
        "document '{id}' was parsed in raw mode and has no chunk annotations; \
         supply annotated input or zero-fill the chunk block (--allow-partial)"
    )]
    RawMode { id: String },
}

impl Error {
    pub fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub fn validation(message: impl Into<String>) -> Self {
        Error::Validation(message.into())
    }

    pub fn io(path: impl Into<PathBuf>, cause: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            cause,
        }
    }

    pub fn in_file(path: impl Into<PathBuf>, cause: Error) -> Self {
        Error::InFile {
            path: path.into(),
            cause: Box::new(cause),
        }
    }
}
