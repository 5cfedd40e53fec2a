use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::flood::flood;
use super::sample::{sample_graph_with, EdgeInit};
use crate::{BundleSize, EdgeMarkovParams, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    pub runs: u64,
    pub seed: u64,
    pub alpha: f64,
    /// Maximum delay in time steps.
    pub max_delay: usize,
}

impl SimConfig {
    pub fn new(runs: u64, seed: u64, alpha: f64, max_delay: usize) -> Result<Self> {
        if runs == 0 {
            return Err(Error::InvalidParameter {
                name: "runs",
                value: 0.0,
                reason: "at least one run is required",
            });
        }
        BundleSize::new(alpha)?;
        Ok(Self {
            runs,
            seed,
            alpha,
            max_delay,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimEstimate {
    pub delivery_ratio: f64,
    /// Binomial standard error `sqrt(p (1 - p) / runs)`.
    pub std_error: f64,
    pub runs: u64,
    pub successes: u64,
}

impl SimEstimate {
    pub fn from_counts(successes: u64, runs: u64) -> Self {
        let p = successes as f64 / runs as f64;
        Self {
            delivery_ratio: p,
            std_error: (p * (1.0 - p) / runs as f64).sqrt(),
            runs,
            successes,
        }
    }
}

/// Random generator for trial `index`: stream `index` of the master seed, so
/// trials are independent of each other and of execution order.
pub(crate) fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform ordered pair of distinct nodes.
pub(crate) fn random_pair<R: Rng + ?Sized>(rng: &mut R, n_nodes: usize) -> (usize, usize) {
    let source = rng.random_range(0..n_nodes);
    let mut dest = rng.random_range(0..n_nodes - 1);
    if dest >= source {
        dest += 1;
    }
    (source, dest)
}

/// Monte Carlo delivery ratio: each run samples a fresh graph (stationary
/// start) and a uniformly random source/destination pair, then floods.
/// Runs execute in parallel; the result is identical for a given seed.
pub fn estimate_delivery(
    params: &EdgeMarkovParams,
    n_nodes: usize,
    config: &SimConfig,
) -> Result<SimEstimate> {
    if n_nodes < 2 {
        return Err(Error::TooFewNodes(n_nodes));
    }
    let config = SimConfig::new(config.runs, config.seed, config.alpha, config.max_delay)?;
    if config.max_delay == 0 {
        return Ok(SimEstimate::from_counts(0, config.runs));
    }
    let successes = (0..config.runs)
        .into_par_iter()
        .map(|run| -> Result<u64> {
            let mut rng = trial_rng(config.seed, run);
            let (source, dest) = random_pair(&mut rng, n_nodes);
            let graph = sample_graph_with(
                params.into(),
                EdgeInit::Stationary,
                n_nodes,
                config.max_delay,
                params.tau(),
                &mut rng,
            )?;
            let outcome = flood(&graph, source, dest, config.alpha, config.max_delay, 0)?;
            Ok(outcome.success() as u64)
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    Ok(SimEstimate::from_counts(successes, config.runs))
}
