use super::binomial::{binomial_pmf, miss_probability, reach_probability};
use super::bounds::{lower_rates, upper_rates, LowerBoundMode};
use super::states::{state_count, EpidemicState, StateSpace};
use crate::{BundleSize, EdgeMarkovParams, Error, Result};

/// Largest network the dense matrices are built for (4952 states, ~196 MB).
pub const MAX_NODES: usize = 100;

/// Per-step probabilities that a link from an infected node to a given
/// uninfected node (relay or destination) carries the bundle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InfectionRates {
    /// For nodes infected during the previous step.
    pub fresh: f64,
    /// For nodes infected before the previous step.
    pub earlier: f64,
}

impl InfectionRates {
    /// Links come up between steps: `(pi_up, p_up)`.
    pub fn dynamic(params: &EdgeMarkovParams) -> Self {
        Self {
            fresh: params.pi_up(),
            earlier: params.p_up(),
        }
    }

    /// Additional hops inside one step: the topology is frozen, so only the
    /// freshly infected nodes can reach anyone new.
    pub fn frozen(params: &EdgeMarkovParams) -> Self {
        Self {
            fresh: params.pi_up(),
            earlier: 0.0,
        }
    }
}

/// Dense row-stochastic matrix over the canonical [`StateSpace`].
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    space: StateSpace,
    entries: Vec<f64>,
}

impl TransitionMatrix {
    pub fn dim(&self) -> usize {
        self.space.len()
    }

    pub fn n_nodes(&self) -> usize {
        self.space.n_nodes()
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn ordering(&self) -> &[EpidemicState] {
        self.space.states()
    }

    pub fn row(&self, index: usize) -> &[f64] {
        let dim = self.dim();
        &self.entries[index * dim..(index + 1) * dim]
    }

    pub fn entry(&self, from: usize, to: usize) -> f64 {
        self.entries[from * self.dim() + to]
    }

    /// Transition probability between two states; 0 for states outside the space.
    pub fn get(&self, from: EpidemicState, to: EpidemicState) -> f64 {
        match (self.space.index_of(from), self.space.index_of(to)) {
            (Some(r), Some(c)) => self.entry(r, c),
            _ => 0.0,
        }
    }

    /// Largest `|row sum - 1|` over all rows.
    pub fn max_row_sum_error(&self) -> f64 {
        (0..self.dim())
            .map(|r| (self.row(r).iter().sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// Row vector times matrix.
    pub(crate) fn left_multiply(&self, v: &[f64], out: &mut [f64]) {
        out.fill(0.0);
        for (r, &mass) in v.iter().enumerate() {
            if mass == 0.0 {
                continue;
            }
            for (o, &t) in out.iter_mut().zip(self.row(r)) {
                *o += mass * t;
            }
        }
    }
}

pub(crate) fn check_nodes(n_nodes: usize) -> Result<()> {
    if n_nodes < 2 {
        return Err(Error::TooFewNodes(n_nodes));
    }
    if n_nodes > MAX_NODES {
        return Err(Error::TooManyNodes {
            nodes: n_nodes,
            max: MAX_NODES,
        });
    }
    Ok(())
}

/// Builds the chain for arbitrary per-cohort infection rates.
///
/// From `Pair(i, j)` with `s = N-1-i-j` susceptible relays, the destination is
/// reached with probability `1 - (1-fresh)^j (1-earlier)^i`. Otherwise the
/// fresh cohort infects `m` relays (binomial over `s` with
/// `1-(1-fresh)^j`), the earlier cohort infects `j'-m` of the remaining `s-m`
/// (binomial with `1-(1-earlier)^i`), and the chain moves to
/// `Pair(i+j, j')`. `Init` uses the same formulas with `(i, j) = (0, 1)`.
pub fn build_matrix(n_nodes: usize, rates: InfectionRates) -> Result<TransitionMatrix> {
    check_nodes(n_nodes)?;
    crate::error::check_probability("fresh infection rate", rates.fresh)?;
    crate::error::check_probability("earlier infection rate", rates.earlier)?;

    let space = StateSpace::new(n_nodes);
    let dim = state_count(n_nodes);
    let succ = space.succ_index();
    let mut entries = vec![0.0; dim * dim];

    for (r, state) in space.states().iter().enumerate() {
        let (earlier, fresh) = match *state {
            EpidemicState::Init => (0, 1),
            EpidemicState::Pair { earlier, fresh } => (earlier, fresh),
            EpidemicState::Succ => {
                entries[r * dim + succ] = 1.0;
                continue;
            }
        };
        let row = &mut entries[r * dim..(r + 1) * dim];
        let susceptible = n_nodes - 1 - earlier - fresh;
        let miss = miss_probability(rates.fresh, fresh) * miss_probability(rates.earlier, earlier);
        row[succ] = 1.0 - miss;

        let infected = earlier + fresh;
        let by_fresh = binomial_pmf(susceptible, reach_probability(rates.fresh, fresh));
        let q_earlier = reach_probability(rates.earlier, earlier);
        for (m, &p_fresh) in by_fresh.iter().enumerate() {
            if p_fresh == 0.0 {
                continue;
            }
            let by_earlier = binomial_pmf(susceptible - m, q_earlier);
            for (extra, &p_earlier) in by_earlier.iter().enumerate() {
                row[space.pair_index(infected, m + extra)] += miss * p_fresh * p_earlier;
            }
        }
    }
    Ok(TransitionMatrix { space, entries })
}

/// The step-to-step matrix `T`.
pub fn build_dynamic_matrix(params: &EdgeMarkovParams, n_nodes: usize) -> Result<TransitionMatrix> {
    build_matrix(n_nodes, InfectionRates::dynamic(params))
}

/// The within-step matrix `R` for extra hops on a frozen topology.
pub fn build_static_matrix(params: &EdgeMarkovParams, n_nodes: usize) -> Result<TransitionMatrix> {
    build_matrix(n_nodes, InfectionRates::frozen(params))
}

/// One interval of `ceil(alpha)` steps, counting only links that are up for
/// the whole interval from its start.
pub fn build_lower_bound_matrix(
    params: &EdgeMarkovParams,
    n_nodes: usize,
    alpha: BundleSize,
    mode: LowerBoundMode,
) -> Result<TransitionMatrix> {
    let rates = lower_rates(params, alpha.interval_steps(), mode);
    build_matrix(n_nodes, rates.into())
}

/// One interval of `ceil(alpha)` steps, crediting every sufficiently long link
/// that comes up at any point of the interval.
pub fn build_upper_bound_matrix(
    params: &EdgeMarkovParams,
    n_nodes: usize,
    alpha: BundleSize,
) -> Result<TransitionMatrix> {
    let rates = upper_rates(params, alpha.interval_steps());
    build_matrix(n_nodes, rates.into())
}
