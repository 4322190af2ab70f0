use std::path::PathBuf;

use onephoton_core::Error as CoreError;
use thiserror::Error;

use crate::config::ConfigError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration:\n{}", list(.0))]
    Validation(Vec<ConfigError>),
    #[error("{scenario}: {source}")]
    Physics {
        scenario: &'static str,
        #[source]
        source: CoreError,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },
}

fn list(errors: &[ConfigError]) -> String {
    errors
        .iter()
        .map(|e| format!("  {e}"))
        .collect::<Vec<_>>()
        .join("\n")
}

impl CliError {
    /// 0 success, 1 validation, 2 numerical failure, 3 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Physics { source, .. } => match source {
                CoreError::NonConvergence { .. }
                | CoreError::StepSizeUnderflow { .. }
                | CoreError::Overflow(_)
                | CoreError::Truncation { .. }
                | CoreError::BracketFailure { .. } => 2,
                _ => 1,
            },
            CliError::Io { .. } | CliError::Format { .. } => 3,
        }
    }
}
