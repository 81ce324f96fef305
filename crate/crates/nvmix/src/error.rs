//! Application errors mapped onto process exit codes.

use std::fmt;

/// Error categories of the command-line tool. The process exit code is 2 for
/// configuration problems, 3 for numerical failures, 4 for I/O.
#[derive(Debug)]
pub enum AppError {
    /// Bad configuration file, units, or parameter combination.
    Config(String),
    /// The numerics refused: solver failures, invalid physical regimes.
    Numerical(String),
    /// Filesystem problems, always with the offending path.
    Io(String),
}

/// Result alias for application code.
pub type AppResult<T> = Result<T, AppError>;

impl AppError {
    /// Process exit code for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Config(_) => 2,
            AppError::Numerical(_) => 3,
            AppError::Io(_) => 4,
        }
    }

    /// Wrap an I/O error with the path it occurred on.
    pub fn io(path: &std::path::Path, err: std::io::Error) -> Self {
        AppError::Io(format!("{}: {err}", path.display()))
    }
}

impl fmt::Display for AppError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AppError::Config(msg) => write!(f, "config error: {msg}"),
            AppError::Numerical(msg) => write!(f, "numerical error: {msg}"),
            AppError::Io(msg) => write!(f, "io error: {msg}"),
        }
    }
}

impl std::error::Error for AppError {}

impl From<nvmix_core::Error> for AppError {
    fn from(e: nvmix_core::Error) -> Self {
        AppError::Numerical(e.to_string())
    }
}
