use std::io::Write;

use couplings::ModelParams;
use lattice_dec::{FormZn, LatticePath};
use rayon::prelude::*;
use serde::Serialize;

use crate::chain::HeatBath;
use crate::{Result, SamplerError};

pub const DEFAULT_BATCHES: usize = 64;
pub const MIN_BATCHES: usize = 32;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EstimatorResult {
    /// Mean of the normalized observable.
    pub mean: f64,
    /// Batch-means standard error.
    pub std_error: f64,
    pub batches: usize,
    /// Measurement sweeps per chain.
    pub sweeps: u64,
    pub burn_in: u64,
    pub seed: u64,
    pub chains: usize,
    /// `phi_kappa(1)^|gamma|`; `mean * scale` estimates `E_phi[L_hat_gamma]`.
    pub scale: f64,
    /// Smallest sampled value of the normalized observable.
    pub min_observed: f64,
}

impl EstimatorResult {
    pub fn wilson(&self) -> f64 {
        self.mean * self.scale
    }
}

/// Observations of one chain, one per measurement sweep.
#[derive(Clone, Debug)]
pub struct ChainRun {
    pub burn_in: u64,
    pub values: Vec<f64>,
}

impl ChainRun {
    /// Writes `sweep,value` rows; sweep indices count from the end of burn-in.
    pub fn write_trace<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "sweep,value")?;
        for (i, v) in self.values.iter().enumerate() {
            writeln!(out, "{},{v:e}", self.burn_in + i as u64 + 1)?;
        }
        Ok(())
    }
}

/// Means of `batches` consecutive equal-size blocks; trailing observations
/// that do not fill a block are dropped.
pub fn batch_means(values: &[f64], batches: usize) -> Result<Vec<f64>> {
    if batches < MIN_BATCHES || values.len() < batches {
        return Err(SamplerError::TooFewBatches { batches: batches.min(values.len()), min: MIN_BATCHES });
    }
    let size = values.len() / batches;
    Ok(values.chunks_exact(size).take(batches).map(|c| c.iter().sum::<f64>() / size as f64).collect())
}

/// Mean and standard error from pooled batch means.
pub fn pooled(means: &[f64]) -> (f64, f64) {
    let k = means.len() as f64;
    let mean = means.iter().sum::<f64>() / k;
    let var = means.iter().map(|m| (m - mean).powi(2)).sum::<f64>() / (k - 1.0);
    (mean, (var / k).sqrt())
}

/// Requires every vertex of `gamma` to be at least `floor(N/4)` from the boundary.
pub fn check_margin(bath: &HeatBath, gamma: &LatticePath) -> Result<()> {
    let need = bath.params.half_side / 4;
    let lbox = bath.lattice_box();
    for v in gamma.vertices() {
        let got = lbox.margin(&v);
        if got < need {
            return Err(SamplerError::Margin { need, got });
        }
    }
    Ok(())
}

/// Options for [`estimate_wilson`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunPlan {
    pub sweeps: u64,
    pub burn_in: u64,
    pub seed: u64,
    pub chains: usize,
    pub batches: usize,
}

impl RunPlan {
    /// One chain, 64 batches, 10% burn-in.
    pub fn new(sweeps: u64, seed: u64) -> Self {
        Self { sweeps, burn_in: sweeps / 10, seed, chains: 1, batches: DEFAULT_BATCHES }
    }
}

/// Runs chain `stream` and records the normalized observable after each
/// measurement sweep.
pub fn run_chain(bath: &HeatBath, gamma: &[i8], plan: &RunPlan, stream: u64) -> ChainRun {
    let mut state = bath.zero_state(plan.seed, stream);
    for _ in 0..plan.burn_in {
        bath.sweep(&mut state, None);
    }
    let values = (0..plan.sweeps)
        .map(|_| {
            bath.sweep(&mut state, None);
            bath.normalized_observable(&state, gamma)
        })
        .collect();
    ChainRun { burn_in: plan.burn_in, values }
}

/// Estimates `E_phi[L_hat_gamma] / phi_kappa(1)^|gamma|` under the untilted
/// measure. Chains run in parallel with streams `0..chains` of one seed;
/// their batch means are pooled.
pub fn estimate_wilson(params: ModelParams, gamma: &LatticePath, plan: &RunPlan) -> Result<EstimatorResult> {
    let bath = HeatBath::new(params)?;
    let (res, _) = estimate_with_runs(&bath, gamma, plan)?;
    Ok(res)
}

/// As [`estimate_wilson`] on a prepared sampler, also returning each chain's trace.
pub fn estimate_with_runs(bath: &HeatBath, gamma: &LatticePath, plan: &RunPlan) -> Result<(EstimatorResult, Vec<ChainRun>)> {
    check_margin(bath, gamma)?;
    if plan.chains == 0 {
        return Err(SamplerError::Parameter("at least one chain is required".into()));
    }
    if plan.sweeps < plan.batches as u64 || plan.batches < MIN_BATCHES {
        return Err(SamplerError::TooFewBatches { batches: plan.batches.min(plan.sweeps as usize), min: MIN_BATCHES });
    }
    let tilt = bath.tilt(gamma)?;
    let runs: Vec<ChainRun> = (0..plan.chains as u64).into_par_iter().map(|c| run_chain(bath, &tilt, plan, c)).collect();
    let mut means = Vec::with_capacity(plan.batches * plan.chains);
    for r in &runs {
        means.extend(batch_means(&r.values, plan.batches)?);
    }
    let (mean, std_error) = pooled(&means);
    let min_observed = runs.iter().flat_map(|r| r.values.iter().copied()).fold(f64::INFINITY, f64::min);
    let res = EstimatorResult {
        mean,
        std_error,
        batches: means.len(),
        sweeps: plan.sweeps,
        burn_in: plan.burn_in,
        seed: plan.seed,
        chains: plan.chains,
        scale: bath.phi_kappa().phi[1].powi(gamma.len() as i32),
        min_observed,
    };
    Ok((res, runs))
}

/// Snapshot schedule for the tilted chain.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Schedule {
    pub burn_in: u64,
    pub count: usize,
    pub spacing: u64,
}

/// Equally spaced snapshots of the chain with weight proportional to
/// `L_hat_gamma(omega) phi(omega)`.
pub fn sample_tilted_snapshots(params: ModelParams, gamma: &LatticePath, schedule: Schedule, seed: u64) -> Result<Vec<FormZn>> {
    let bath = HeatBath::new(params)?;
    let tilt = bath.tilt(gamma)?;
    let mut state = bath.zero_state(seed, 0);
    for _ in 0..schedule.burn_in {
        bath.sweep(&mut state, Some(&tilt));
    }
    let mut out = Vec::with_capacity(schedule.count);
    for _ in 0..schedule.count {
        for _ in 0..schedule.spacing.max(1) {
            bath.sweep(&mut state, Some(&tilt));
        }
        debug_assert!(bath.cache_is_coherent(&state));
        out.push(bath.form(&state));
    }
    Ok(out)
}
