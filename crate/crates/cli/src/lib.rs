//! Experiment driver: configuration, run modes, provenance-stamped outputs
//! and PGM rendering of plaquette supports.

pub mod config;
pub mod output;
pub mod render;
pub mod run;
pub mod trials;

use thiserror::Error;

pub use config::{ExperimentConfig, Mode, Overrides, PathSpec, RawConfig};
pub use render::{render_pgm, PlaneWindow};
pub use run::{run, Check, RunOutcome};
pub use trials::{geometric_trials, TrialSummary};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    /// Enumeration guard or another precondition of the requested computation.
    #[error("precondition failed: {0}")]
    Guard(String),
    #[error("i/o error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io { .. } => 1,
            CliError::Guard(_) => 2,
        }
    }
}

impl From<exact_oracle::OracleError> for CliError {
    fn from(e: exact_oracle::OracleError) -> Self {
        match e {
            exact_oracle::OracleError::StateGuard { .. } => CliError::Guard(format!("state space too large: {e}")),
            other => CliError::Guard(other.to_string()),
        }
    }
}

impl From<ht_sampler::SamplerError> for CliError {
    fn from(e: ht_sampler::SamplerError) -> Self {
        match e {
            ht_sampler::SamplerError::Parameter(_) => CliError::Config(e.to_string()),
            other => CliError::Guard(other.to_string()),
        }
    }
}

impl From<bounds::BoundsError> for CliError {
    fn from(e: bounds::BoundsError) -> Self {
        CliError::Guard(e.to_string())
    }
}

impl From<lattice_dec::LatticeError> for CliError {
    fn from(e: lattice_dec::LatticeError) -> Self {
        CliError::Guard(e.to_string())
    }
}
