use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("non-finite value at {location}")]
    NonFinite { location: String },

    #[error("inadmissible state at {location}: {detail}")]
    Inadmissible { location: String, detail: String },

    #[error("vacuum is generated by the Riemann data")]
    Vacuum,

    #[error("iteration did not converge: {0}")]
    NonConvergence(String),

    #[error("unknown problem `{0}`")]
    UnknownProblem(String),

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("corrupt cache file {}", path.display())]
    CacheCorrupt { path: PathBuf },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed file {}: {detail}", path.display())]
    Parse { path: PathBuf, detail: String },
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    /// True for failures of the numerical method itself, as opposed to
    /// configuration or I/O problems.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonFinite { .. }
                | Error::Inadmissible { .. }
                | Error::Vacuum
                | Error::NonConvergence(_)
                | Error::DegenerateInput(_)
        )
    }

    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io { .. } | Error::CacheCorrupt { .. } | Error::Parse { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
