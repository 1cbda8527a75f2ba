use std::path::PathBuf;

/// Errors produced by the library. Warnings that do not abort an operation
/// travel as [`crate::diag::Diagnostic`]s instead.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("RDF syntax error in {path} at line {line}, column {column}: {message}")]
    RdfSyntax {
        path: PathBuf,
        line: u64,
        column: u64,
        message: String,
    },

    #[error("malformed document {path}: {message}")]
    MalformedDocument { path: PathBuf, message: String },

    #[error("{path} is not valid UTF-8")]
    Encoding { path: PathBuf },

    #[error("unknown category prefix in tag string {tag:?}")]
    UnknownTagPrefix { tag: String },

    #[error("tag cannot be encoded: {reason}")]
    UnencodableTag { reason: String },

    #[error("label empty after preprocessing")]
    EmptyAfterPreprocess,

    #[error("entry {entry_id} cannot be classified: {reason}")]
    Unclassifiable { entry_id: String, reason: String },

    #[error("invalid {what} file {path}, line {line}: {message}")]
    DataFile {
        what: &'static str,
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("invalid base IRI {iri:?}: {reason}")]
    InvalidBaseIri { iri: String, reason: String },

    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
