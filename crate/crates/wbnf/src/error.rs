use std::path::PathBuf;

use thiserror::Error;

use crate::scenario::ScenarioError;

/// Everything a command can fail with, mapped onto process exit codes.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad scenario file or override.
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    /// Reading the scenario or writing an output failed.
    #[error("{}: {source}", path.display())]
    Io {
        /// File involved.
        path: PathBuf,
        /// Underlying error.
        source: std::io::Error,
    },
    /// The math core rejected an input or found no solution.
    #[error("computation failed: {0}")]
    Compute(#[from] wbnf_core::Error),
    /// A threshold at or above unity has no main-lobe contour.
    #[error("no contour at threshold {0} (thresholds must be below 0 dB)")]
    NoContour(f64),
    /// One or more verification checks failed.
    #[error("verification failed: {0} check(s) out of tolerance")]
    Verification(usize),
}

impl CliError {
    /// `1` for usage and input errors, `2` for computation errors, `3` for
    /// failed verification.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Scenario(_) | CliError::Io { .. } => 1,
            CliError::Compute(_) | CliError::NoContour(_) => 2,
            CliError::Verification(_) => 3,
        }
    }
}
