use std::path::PathBuf;

/// Errors of the command-line layer. Each maps to a process exit code.
#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] lrc_core::Error),
    #[error("cannot access {}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("malformed {what}: {detail}")]
    Format { what: &'static str, detail: String },
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("thread pool: {0}")]
    Pool(String),
}

impl AppError {
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Usage(_) => 2,
            AppError::Verification(_) => 3,
            _ => 1,
        }
    }

    pub fn format(what: &'static str, detail: impl ToString) -> Self {
        AppError::Format { what, detail: detail.to_string() }
    }
}

pub type AppResult<T> = std::result::Result<T, AppError>;
