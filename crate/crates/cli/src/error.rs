use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("dangling reference: {0}")]
    DanglingReference(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error(transparent)]
    Core(#[from] amalgam_core::Error),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("generator exhausted: {0}")]
    GeneratorExhausted(String),

    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// Process exit code: 2 for input problems, 3 for generator
    /// exhaustion. Law failures exit with 1 and are not errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::GeneratorExhausted(_) => 3,
            _ => 2,
        }
    }
}
