use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("{0}")]
    Limit(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    /// 1 validation, 2 verification failure, 3 resource-limit refusal.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) | CliError::Io { .. } => 1,
            CliError::Verification(_) => 2,
            CliError::Limit(_) => 3,
        }
    }
}

impl From<alternant::Error> for CliError {
    fn from(e: alternant::Error) -> Self {
        match e {
            alternant::Error::LimitExceeded { .. } => CliError::Limit(e.to_string()),
            alternant::Error::InvariantViolation(_) => CliError::Verification(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}
