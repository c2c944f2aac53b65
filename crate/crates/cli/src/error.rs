use thiserror::Error;

/// Exit code for bad flags, arguments or unusable output paths.
pub const EXIT_USAGE: u8 = 2;
/// Exit code for consistency failures and golden-data mismatches.
pub const EXIT_CONSISTENCY: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] simplexharm::Error),

    #[error("usage: {0}")]
    Usage(String),

    #[error("{failed} of {total} checks failed")]
    Mismatch { failed: usize, total: usize },

    #[error("golden asset {name}: {message}")]
    Asset { name: String, message: String },

    #[error("serialization: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("output: {0}")]
    Output(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_consistency() => EXIT_CONSISTENCY,
            CliError::Core(_) | CliError::Usage(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::Mismatch { .. }
            | CliError::Asset { .. }
            | CliError::Json(_)
            | CliError::Csv(_)
            | CliError::Output(_) => EXIT_CONSISTENCY,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
