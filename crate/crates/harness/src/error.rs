use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },

    #[error("invalid configuration: {0}")]
    Invalid(String),

    #[error(transparent)]
    Core(#[from] swan_core::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("check failed: {0}")]
    Assertion(String),
}

impl HarnessError {
    /// Process exit status: 2 for configuration problems, 3 for failed
    /// checks, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config { .. } | HarnessError::Invalid(_) | HarnessError::Core(_) => 2,
            HarnessError::Assertion(_) => 3,
            HarnessError::Io(_) => 1,
        }
    }
}
