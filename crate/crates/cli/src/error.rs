use std::fmt;

use commutant_core::Error as CoreError;

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: u8 = 0;
    pub const CHECK_FAILED: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const INTRACTABLE: u8 = 3;
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    /// A document failed to parse; `source` names the file or builtin.
    Parse { source: String, message: String },
    Io { path: String, message: String },
    Core(CoreError),
    /// A requested check ran and did not hold.
    CheckFailed(String),
}

pub type CliResult<T> = Result<T, CliError>;

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::CheckFailed(_) => exit::CHECK_FAILED,
            CliError::Core(
                CoreError::Intractable { .. }
                | CoreError::EnumerationTooLarge { .. }
                | CoreError::TableTooLarge { .. },
            ) => exit::INTRACTABLE,
            _ => exit::USAGE,
        }
    }

    pub fn parse(source: &str, message: impl Into<String>) -> Self {
        CliError::Parse { source: source.to_string(), message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Parse { source, message } => write!(f, "{source}: {message}"),
            CliError::Io { path, message } => write!(f, "{path}: {message}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::CheckFailed(m) => write!(f, "check failed: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}
