//! Library surface of the command-line front end: configs, command
//! implementations, the verification suite, and exit-code classification.
//! The binary in `main.rs` is a thin argument-parsing shell over this.

pub mod commands;
pub mod config;
pub mod output;
pub mod verify;

/// Process exit codes: 0 ok, 1 verification failure, 2 invalid input,
/// 3 numerical failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Exit code 2.
    InvalidInput(String),
    /// Exit code 3.
    Numerical(String),
}

impl CliError {
    pub fn invalid(field: &str, message: &str) -> Self {
        CliError::InvalidInput(format!("{field}: {message}"))
    }

    pub fn numerical(message: &str) -> Self {
        CliError::Numerical(message.to_string())
    }

    /// Library errors raised while building inputs are the caller's fault.
    pub fn from_invalid(e: vortexwave::Error) -> Self {
        CliError::InvalidInput(e.to_string())
    }

    /// Library errors raised mid-computation are numerical failures.
    pub fn from_numerical(e: vortexwave::Error) -> Self {
        match e {
            vortexwave::Error::Domain { .. } | vortexwave::Error::InvalidConfig(_) => {
                CliError::InvalidInput(e.to_string())
            }
            _ => CliError::Numerical(e.to_string()),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::InvalidInput(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::InvalidInput(m) | CliError::Numerical(m) => m,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.message())
    }
}

impl std::error::Error for CliError {}
