use std::path::PathBuf;

use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const USAGE: u8 = 1;
    pub const SINGULAR: u8 = 2;
    pub const IO: u8 = 3;
    pub const FAILED: u8 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] krawx_core::Error),

    #[error("cannot write {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Core(krawx_core::Error::Precondition(_)) => exit::USAGE,
            CliError::Core(krawx_core::Error::Singular { .. }) => exit::SINGULAR,
            CliError::Core(krawx_core::Error::Inconsistent(_)) => exit::FAILED,
            CliError::Io { .. } => exit::IO,
        }
    }
}
