//! Error type shared across the crate.

use thiserror::Error;

/// All failure modes surfaced by the library.
///
/// Variants are grouped so a front end can map them onto coarse exit
/// classes: usage problems, data problems, and numeric failures.
#[derive(Debug, Error)]
pub enum Error {
    /// A line in an input file could not be parsed.
    #[error("{path}:{line}: {message}")]
    MalformedLine {
        path: String,
        line: usize,
        message: String,
    },

    /// An input stream contained no data lines at all.
    #[error("{path}: empty input (no data lines)")]
    EmptyInput { path: String },

    /// A partition file disagrees with the graph's node set.
    #[error("partition error: {0}")]
    Partition(String),

    /// A manifest or run configuration is unusable.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// A parameter is outside its legal range.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// An operation was handed a graph that violates its preconditions.
    #[error("graph precondition violated: {0}")]
    Precondition(String),

    /// An iterative solver diverged or failed to converge.
    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for errors caused by malformed, inconsistent, or unusable
    /// input data, including graphs that violate an operation's
    /// preconditions.
    pub fn is_data_error(&self) -> bool {
        matches!(
            self,
            Error::MalformedLine { .. }
                | Error::EmptyInput { .. }
                | Error::Partition(_)
                | Error::Precondition(_)
                | Error::Io { .. }
        )
    }

    /// True for errors caused by numeric divergence or non-convergence.
    pub fn is_numeric_error(&self) -> bool {
        matches!(self, Error::Numeric(_))
    }
}
