use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("cannot access {0}")]
    Io(String),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error(transparent)]
    Core(#[from] prodcurves_core::Error),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("not exportable: {0}")]
    NotExportable(String),
}

pub type CliResult<T> = Result<T, CliError>;

impl CliError {
    /// 2 when the command could not be run as asked, 1 when the input was
    /// read and failed a check.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            _ => 1,
        }
    }
}
