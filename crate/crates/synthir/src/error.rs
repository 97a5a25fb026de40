//! Crate-wide error type.

use std::fmt;
use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug)]
pub enum Error {
    /// I/O failure, annotated with the path involved.
    Io { path: PathBuf, source: std::io::Error },
    /// A line of an input file could not be parsed.
    Parse { path: PathBuf, line: usize, message: String },
    /// A corpus file declared the same document id twice.
    DuplicateDocId { doc_id: String, line: usize },
    /// Duplicate (query_id, doc_id) pair within one qrels file.
    DuplicateQrel { query_id: String, doc_id: String, line: usize },
    /// Qrel entries referencing query ids absent from their split.
    UnknownQrelQueries { split: String, offenders: Vec<String> },
    /// Not enough relevant pairs to draw the requested few-shot examples.
    InsufficientExamples { requested: usize, available: usize, split: String },
    /// Operation requires a non-empty corpus.
    EmptyCorpus,
    /// Template name not among the built-ins and not a readable file.
    UnknownTemplate(String),
    /// A custom template or prefix file violated its format.
    MalformedTemplate { path: PathBuf, message: String },
    /// The prompt cannot fit the token budget even with an empty target document.
    BudgetExceeded { budget: usize, minimum: usize },
    /// Few-shot examples passed to a render violated the template contract.
    InvalidExamples(String),
    /// Mean log-probability of an empty token list is undefined.
    EmptyLogprobs,
    /// Completion endpoint failure (after retries, where applicable).
    Endpoint(String),
    /// Endpoint returned completions without per-token log-probabilities.
    MissingLogprobs,
    /// Run entries reference documents absent from the corpus.
    MissingRunDocs(Vec<String>),
    /// Run entries reference queries absent from the query set.
    MissingRunQueries(Vec<String>),
    /// A run violates the ranked-list invariants.
    InvalidRun(String),
    /// Persisted index file is malformed or has the wrong magic bytes.
    IndexFormat(String),
    /// Persisted index was written by an incompatible format version.
    IndexVersion { found: u32, expected: u32 },
    /// Invalid configuration or incompatible option combination.
    Config(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Io { path, source } => write!(f, "{}: {}", path.display(), source),
            Error::Parse { path, line, message } => {
                write!(f, "{}:{}: {}", path.display(), line, message)
            }
            Error::DuplicateDocId { doc_id, line } => {
                write!(f, "duplicate doc_id {doc_id:?} on line {line}")
            }
            Error::DuplicateQrel { query_id, doc_id, line } => {
                write!(f, "duplicate qrel ({query_id:?}, {doc_id:?}) on line {line}")
            }
            Error::UnknownQrelQueries { split, offenders } => write!(
                f,
                "qrels for split {split:?} reference unknown query ids: {}",
                offenders.join(", ")
            ),
            Error::InsufficientExamples { requested, available, split } => write!(
                f,
                "requested {requested} few-shot examples but split {split:?} has only {available} relevant pairs"
            ),
            Error::EmptyCorpus => write!(f, "corpus is empty"),
            Error::UnknownTemplate(name) => {
                write!(f, "unknown prompt template {name:?} (not a built-in and not a file)")
            }
            Error::MalformedTemplate { path, message } => {
                write!(f, "malformed template {}: {}", path.display(), message)
            }
            Error::BudgetExceeded { budget, minimum } => write!(
                f,
                "token budget {budget} unreachable: prompt needs {minimum} tokens with an empty target document"
            ),
            Error::InvalidExamples(msg) => write!(f, "invalid few-shot examples: {msg}"),
            Error::EmptyLogprobs => write!(f, "cannot score a record with no token log-probabilities"),
            Error::Endpoint(msg) => write!(f, "endpoint error: {msg}"),
            Error::MissingLogprobs => write!(
                f,
                "endpoint response carries no per-token log-probabilities; score filtering would be impossible"
            ),
            Error::MissingRunDocs(ids) => {
                write!(f, "run references doc ids missing from corpus: {}", ids.join(", "))
            }
            Error::MissingRunQueries(ids) => {
                write!(f, "run references query ids missing from query set: {}", ids.join(", "))
            }
            Error::InvalidRun(msg) => write!(f, "invalid run: {msg}"),
            Error::IndexFormat(msg) => write!(f, "bad index file: {msg}"),
            Error::IndexVersion { found, expected } => {
                write!(f, "index file version {found} unsupported (expected {expected}); rebuild the index")
            }
            Error::Config(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io { source, .. } => Some(source),
            _ => None,
        }
    }
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    pub fn parse(path: impl Into<PathBuf>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse { path: path.into(), line, message: message.into() }
    }
}
