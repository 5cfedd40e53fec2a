use rayon::prelude::*;

use crate::experiment::{ExperimentResult, Observation, ValueSource};
use crate::sim::estimate::{random_pair, trial_rng};
use crate::sim::{flood, DynamicGraph};
use crate::{BundleSize, Error, Result};

/// Replay campaign over a discretized trace. Times are in seconds and must be
/// multiples of the trace's sampling period.
#[derive(Debug, Clone, PartialEq)]
pub struct ReplayConfig {
    /// Batches are injected at `0, interval, 2 interval, ...` strictly before this time.
    pub horizon: f64,
    pub injection_interval: f64,
    pub pairs_per_batch: usize,
    pub alpha_values: Vec<f64>,
    pub delay_values: Vec<f64>,
    pub seed: u64,
}

fn to_steps(name: &str, seconds: f64, tau: f64) -> Result<usize> {
    let ratio = seconds / tau;
    let steps = ratio.round();
    if !seconds.is_finite() || seconds < 0.0 || (ratio - steps).abs() > 1e-9 * ratio.max(1.0) {
        return Err(Error::InvalidReplay(format!(
            "{name} = {seconds} s is not a non-negative multiple of the sampling period {tau} s"
        )));
    }
    Ok(steps as usize)
}

/// Floods bundles between random node pairs injected periodically into the
/// trace and reports, for every `(alpha, delay)`, the fraction delivered in
/// time. All `(alpha, delay)` combinations see the same pairs and start times.
///
/// The standard error treats each batch as one cluster: pairs injected at the
/// same time share the same topology and are not independent.
pub fn replay_experiment(graph: &DynamicGraph, config: &ReplayConfig) -> Result<ExperimentResult> {
    let n = graph.n_nodes();
    if n < 2 {
        return Err(Error::TooFewNodes(n));
    }
    let tau = graph.tau();
    if config.alpha_values.is_empty() || config.delay_values.is_empty() {
        return Err(Error::InvalidReplay(
            "at least one bundle size and one delay are required".into(),
        ));
    }
    if config.pairs_per_batch == 0 {
        return Err(Error::InvalidReplay(
            "pairs_per_batch must be positive".into(),
        ));
    }
    for &alpha in &config.alpha_values {
        BundleSize::new(alpha)?;
    }
    let interval = to_steps("injection interval", config.injection_interval, tau)?;
    if interval == 0 {
        return Err(Error::InvalidReplay(
            "injection interval must be positive".into(),
        ));
    }
    if !(config.horizon.is_finite() && config.horizon > 0.0) {
        return Err(Error::InvalidReplay(format!(
            "horizon {} must be positive",
            config.horizon
        )));
    }
    let delays: Vec<usize> = config
        .delay_values
        .iter()
        .map(|&d| to_steps("delay", d, tau))
        .collect::<Result<_>>()?;
    let max_delay = *delays.iter().max().expect("non-empty");

    let horizon_steps = config.horizon / tau;
    let starts: Vec<usize> = (0..)
        .map(|b| b * interval)
        .take_while(|&s| (s as f64) < horizon_steps - 1e-9)
        .collect();
    let needed = starts.last().copied().unwrap_or(0) + max_delay;
    if needed > graph.len() {
        return Err(Error::TraceTooShort {
            needed,
            available: graph.len(),
        });
    }

    let cells = config.alpha_values.len() * delays.len();
    // successes per (alpha, delay) cell for each batch
    let per_batch: Vec<Vec<u64>> = starts
        .par_iter()
        .enumerate()
        .map(|(batch, &start)| -> Result<Vec<u64>> {
            let mut rng = trial_rng(config.seed, batch as u64);
            let mut counts = vec![0u64; cells];
            for _ in 0..config.pairs_per_batch {
                let (source, dest) = random_pair(&mut rng, n);
                for (ai, &alpha) in config.alpha_values.iter().enumerate() {
                    let outcome = flood(graph, source, dest, alpha, max_delay, start)?;
                    for (di, &d) in delays.iter().enumerate() {
                        counts[ai * delays.len() + di] += outcome.delivered_within(d) as u64;
                    }
                }
            }
            Ok(counts)
        })
        .collect::<Result<_>>()?;

    let batches = per_batch.len();
    let pairs = config.pairs_per_batch as f64;
    let samples = (batches * config.pairs_per_batch) as u64;
    let mut result = ExperimentResult::default();
    for (ai, &alpha) in config.alpha_values.iter().enumerate() {
        for (di, &d) in delays.iter().enumerate() {
            let cell = ai * delays.len() + di;
            let ratios: Vec<f64> = per_batch.iter().map(|c| c[cell] as f64 / pairs).collect();
            let mean = ratios.iter().sum::<f64>() / batches as f64;
            let std_error = if batches >= 2 {
                let var =
                    ratios.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / (batches - 1) as f64;
                (var / batches as f64).sqrt()
            } else {
                (mean * (1.0 - mean) / samples as f64).sqrt()
            };
            result.observations.push(Observation {
                alpha,
                max_delay: d as u64,
                n_nodes: n,
                source: ValueSource::Replay,
                value: mean,
                std_error: Some(std_error),
                samples: Some(samples),
            });
        }
    }
    Ok(result)
}
