use std::path::PathBuf;

/// Errors raised by the simulation and I/O layers.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A configuration value is out of range.
    #[error("invalid parameter: {0}")]
    Parameter(String),
    /// A query lies outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A geometric construction does not fit inside the simulation window.
    #[error("window error: {0}")]
    Window(String),
    /// Malformed input file.
    #[error("format error in {path}: {msg}")]
    Format { path: PathBuf, msg: String },
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn param(msg: impl Into<String>) -> Error {
    Error::Parameter(msg.into())
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn window(msg: impl Into<String>) -> Error {
    Error::Window(msg.into())
}

pub(crate) fn io_err(path: &std::path::Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

pub(crate) fn format_err(path: &std::path::Path, msg: impl Into<String>) -> Error {
    Error::Format {
        path: path.to_path_buf(),
        msg: msg.into(),
    }
}
