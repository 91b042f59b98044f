use lowwalsh_core::Error;

/// Everything that can stop a command, mapped onto the exit-code contract.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("capability exceeded: {0}")]
    Capability(String),
    #[error(transparent)]
    Core(Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::TooLarge { .. } => CliError::Capability(e.to_string()),
            e => CliError::Core(e),
        }
    }
}

impl CliError {
    /// 2 for bad input, 3 for capability overflow, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Capability(_) => 3,
            CliError::Core(Error::NoSuchMu { .. } | Error::UnexpectedValue(_) | Error::DimensionMismatch { .. }) => 1,
            CliError::Core(_) => 2,
            CliError::Io(_) | CliError::Json(_) | CliError::Csv(_) => 1,
        }
    }
}
