//! File formats, parallel minor enumeration, JSON reports and the command
//! line front end on top of `alexkit-core`.

pub mod cli;
pub mod io;
pub mod parallel;
pub mod report;

pub use alexkit_core as core;

/// Failures surfaced by the front end, each with a process exit code.
#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error("{0}")]
    Core(#[from] alexkit_core::Error),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid matrix file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Input(String),
}

impl AppError {
    /// 3 for cap violations, 1 for internal inconsistencies, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Core(alexkit_core::Error::CapExceeded { .. }) => 3,
            AppError::Core(alexkit_core::Error::Inconsistency(_)) => 1,
            _ => 2,
        }
    }
}

pub type AppResult<T> = std::result::Result<T, AppError>;
