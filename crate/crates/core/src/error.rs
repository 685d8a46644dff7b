use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid array configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid user location: {0}")]
    InvalidLocation(String),

    #[error("element index {axis}={index} outside [-{bound}, {bound}]")]
    IndexOutOfRange {
        axis: &'static str,
        index: i64,
        bound: u32,
    },

    #[error("kernel arguments out of range: y={y}, K={k} (need 1 <= y <= 2K)")]
    KernelRange { y: u32, k: u32 },

    #[error("ULA closed form requires {0}")]
    UlaPrecondition(String),

    #[error("unknown preset `{0}` (expected fig1, fig2, fig3 or fig4)")]
    UnknownPreset(String),

    #[error("unknown method `{0}`")]
    UnknownMethod(String),

    #[error("spec line {line}: {msg}")]
    SpecSyntax { line: usize, msg: String },

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for errors originating from the filesystem.
    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io { .. })
    }
}
