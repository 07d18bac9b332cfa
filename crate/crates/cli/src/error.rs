use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Guard(String),
    #[error("verification failed: {failed}")]
    Verification { failed: String, report: String },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Guard(_) => 3,
            CliError::Verification { .. } => 4,
        }
    }
}

impl From<spin_svetlichny::Error> for CliError {
    fn from(e: spin_svetlichny::Error) -> Self {
        use spin_svetlichny::Error as E;
        match e {
            E::DimensionGuardExceeded { .. } | E::SearchGuardExceeded { .. } => CliError::Guard(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}
