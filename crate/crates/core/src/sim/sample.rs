use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::graph::{DynamicGraph, Edge};
use crate::error::check_probability;
use crate::{EdgeMarkovParams, Error, Result};

/// Raw two-state edge chain. Unlike [`EdgeMarkovParams`] it accepts zero rates,
/// which makes frozen or never-connecting graphs expressible.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeChain {
    pub p_up: f64,
    pub p_down: f64,
}

impl EdgeChain {
    pub fn new(p_up: f64, p_down: f64) -> Result<Self> {
        check_probability("p_up", p_up)?;
        check_probability("p_down", p_down)?;
        Ok(Self { p_up, p_down })
    }

    fn stationary_up(&self) -> Result<f64> {
        let total = self.p_up + self.p_down;
        if total == 0.0 {
            return Err(Error::InvalidParameter {
                name: "p_up + p_down",
                value: 0.0,
                reason:
                    "a frozen chain has no stationary distribution; pick an explicit initial state",
            });
        }
        Ok(self.p_up / total)
    }
}

impl From<&EdgeMarkovParams> for EdgeChain {
    fn from(p: &EdgeMarkovParams) -> Self {
        Self {
            p_up: p.p_up(),
            p_down: p.p_down(),
        }
    }
}

/// State of every edge in the first snapshot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EdgeInit {
    #[default]
    Stationary,
    AllDown,
    AllUp,
}

/// Samples `steps` snapshots of an edge-Markovian graph. The first snapshot is
/// drawn from the stationary distribution. Deterministic given `seed`.
pub fn sample_graph(
    params: &EdgeMarkovParams,
    n_nodes: usize,
    steps: usize,
    seed: u64,
) -> Result<DynamicGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_graph_with(
        params.into(),
        EdgeInit::Stationary,
        n_nodes,
        steps,
        params.tau(),
        &mut rng,
    )
}

pub fn sample_graph_with<R: Rng + ?Sized>(
    chain: EdgeChain,
    init: EdgeInit,
    n_nodes: usize,
    steps: usize,
    tau: f64,
    rng: &mut R,
) -> Result<DynamicGraph> {
    if steps == 0 {
        return Err(Error::InvalidGraph(
            "at least one step must be sampled".into(),
        ));
    }
    if n_nodes > u32::MAX as usize {
        return Err(Error::InvalidGraph(format!(
            "{n_nodes} nodes do not fit a u32 index"
        )));
    }
    if !(tau.is_finite() && tau > 0.0) {
        return Err(Error::InvalidParameter {
            name: "tau",
            value: tau,
            reason: "time step must be positive and finite",
        });
    }
    let pairs: Vec<Edge> = (0..n_nodes as u32)
        .flat_map(|a| (a + 1..n_nodes as u32).map(move |b| (a, b)))
        .collect();
    let mut up: Vec<bool> = match init {
        EdgeInit::Stationary => {
            let pi_up = chain.stationary_up()?;
            pairs.iter().map(|_| rng.random_bool(pi_up)).collect()
        }
        EdgeInit::AllDown => vec![false; pairs.len()],
        EdgeInit::AllUp => vec![true; pairs.len()],
    };

    let collect = |up: &[bool]| -> Vec<Edge> {
        pairs
            .iter()
            .zip(up)
            .filter_map(|(e, &u)| u.then_some(*e))
            .collect()
    };
    let mut snapshots = Vec::with_capacity(steps);
    snapshots.push(collect(&up));
    for _ in 1..steps {
        for state in up.iter_mut() {
            let flip = if *state { chain.p_down } else { chain.p_up };
            if rng.random_bool(flip) {
                *state = !*state;
            }
        }
        snapshots.push(collect(&up));
    }
    Ok(DynamicGraph::from_sorted(n_nodes, tau, snapshots))
}
