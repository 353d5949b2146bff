use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("--{key}: {reason}")]
    Flag { key: String, reason: String },
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("missing `{0}`")]
    Missing(&'static str),
    #[error(transparent)]
    Model(#[from] symshare::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;

/// Process exit status of a completed run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    VerificationFailed,
    SkipOnly,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Success => 0,
            Status::VerificationFailed => 2,
            Status::SkipOnly => 3,
        }
    }
}

/// Every error aborts the run with status 1.
pub const ERROR_EXIT_CODE: i32 = 1;
