use std::path::{Path, PathBuf};

use globular::coherator::{DslError, DslErrorKind};
use thiserror::Error;

/// A failed invocation, classified by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// A tower script error with its position.
    #[error("{}:{}:{}: {}", .file.display(), .err.line, .err.col, .err.message)]
    Script { file: PathBuf, err: DslError },
    /// A malformed input file or argument.
    #[error("{0}")]
    Parse(String),
    #[error("{}: {source}", .file.display())]
    Io { file: PathBuf, source: std::io::Error },
    /// Well-formed input that fails a check.
    #[error("{0}")]
    Check(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Script { err, .. } => match err.kind {
                DslErrorKind::Parse | DslErrorKind::Type => 2,
                DslErrorKind::Inadmissible | DslErrorKind::Duplicate | DslErrorKind::Truncation => 1,
            },
            CliError::Parse(_) => 2,
            CliError::Io { .. } => 3,
            CliError::Check(_) => 1,
        }
    }

    pub fn script(file: &Path, err: DslError) -> CliError {
        CliError::Script { file: file.to_path_buf(), err }
    }

    /// A kernel failure while checking `what`.
    pub fn check(what: impl std::fmt::Display, e: globular::Error) -> CliError {
        CliError::Check(format!("{what}: {e}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;
