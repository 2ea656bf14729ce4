use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {field}: {reason}")]
    Config { field: &'static str, reason: String },
    #[error("cannot read config file {path}: {reason}")]
    ConfigFile { path: String, reason: String },
    #[error(transparent)]
    Core(#[from] htl_core::Error),
    #[error("linear algebra: {0}")]
    Solver(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub(crate) fn config(field: &'static str, reason: impl Into<String>) -> CliError {
        CliError::Config { field, reason: reason.into() }
    }

    /// Process exit code: 2 for anything the user can fix in the
    /// configuration, 1 for failures while running.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config { .. } | CliError::ConfigFile { .. } => 2,
            CliError::Core(htl_core::Error::InsufficientDecades { .. }) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
