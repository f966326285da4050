//! File formats, rendering and subcommand drivers behind the `mft` binary.

pub mod bench;
pub mod format;
pub mod svg;
pub mod verify;

use mft_core::polygon::PolygonError;
use mft_core::SolverError;
use thiserror::Error;

/// Failures of a subcommand, each mapped to a process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Polygon(#[from] PolygonError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    /// 2 for bad input, 3 for a broken invariant, 4 for a size cap.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Polygon(_) | CliError::Io { .. } => 2,
            CliError::Solver(SolverError::Polygon(_)) => 2,
            CliError::Solver(SolverError::InstanceTooLarge { .. }) => 4,
            CliError::Solver(_) | CliError::Verification(_) => 3,
        }
    }
}

pub fn io_error(path: &std::path::Path, source: std::io::Error) -> CliError {
    CliError::Io {
        path: path.display().to_string(),
        source,
    }
}
