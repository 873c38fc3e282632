//! Heat-bath Markov chain for the measure on Z_n-valued 2-forms with weight
//! given by the activity, its tilt by the Wilson-line numerator, and
//! batch-means estimators of normalized Wilson-line expectations.
//!
//! The generator is ChaCha8 (`rand_chacha`), seeded with `seed_from_u64`;
//! chain `k` of a run uses stream `k`.

mod chain;
mod estimate;

use thiserror::Error;

pub use chain::{chain_rng, ChainState, HeatBath};
pub use estimate::{
    batch_means, check_margin, estimate_wilson, estimate_with_runs, pooled, run_chain, sample_tilted_snapshots, ChainRun, EstimatorResult, RunPlan, Schedule,
    DEFAULT_BATCHES, MIN_BATCHES,
};

#[derive(Debug, Error)]
pub enum SamplerError {
    #[error("path is {got} from the boundary, needs at least {need}")]
    Margin { need: i64, got: i64 },
    #[error("{batches} batches available, at least {min} required")]
    TooFewBatches { batches: usize, min: usize },
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error(transparent)]
    Lattice(#[from] lattice_dec::LatticeError),
}

pub type Result<T> = std::result::Result<T, SamplerError>;
