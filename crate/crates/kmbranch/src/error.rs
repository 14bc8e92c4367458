use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Domain(#[from] kmbranch_core::Error),
    #[error("IoFailure: {0}")]
    Io(#[from] std::io::Error),
    #[error("Parse: {0}")]
    Json(serde_json::Error),
    #[error("IoFailure: {0}")]
    Csv(#[from] csv::Error),
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        match e.io_error_kind() {
            Some(kind) => CliError::Io(std::io::Error::new(kind, e)),
            None => CliError::Json(e),
        }
    }
}

impl CliError {
    /// 2 for usage errors, 1 for everything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}
