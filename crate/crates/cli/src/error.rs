use edgefog_core::Error as EngineError;
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_GUARD: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("scenario parse error: {0}")]
    Parse(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("{0}")]
    Engine(#[from] EngineError),

    #[error("format error: {0}")]
    Format(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Engine(EngineError::SizeLimit { .. }) => EXIT_GUARD,
            _ => EXIT_USAGE,
        }
    }

    /// Extra advice printed after the message on stderr.
    pub fn hint(&self) -> Option<String> {
        match self {
            CliError::Engine(EngineError::SizeLimit { guard, size, limit }) => Some(format!(
                "the {guard} is capped at {limit} (this instance needs {size}); shrink the graph or job count"
            )),
            _ => None,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
