use thiserror::Error;

/// Everything a subcommand can fail with, split by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, config entries or parameters.
    #[error("{0}")]
    Validation(String),
    #[error(transparent)]
    Core(#[from] specforge_core::Error),
    /// The computation ran but produced no usable answer.
    #[error("{0}")]
    Numeric(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for invalid input, 1 for numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Core(e) if e.is_validation() => 2,
            _ => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
