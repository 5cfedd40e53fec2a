use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EpidemicState {
    /// Only the source holds the bundle and its links are stationary.
    Init,
    /// `earlier` relays were infected before the last step, `fresh` during it.
    /// The destination is never counted.
    Pair { earlier: usize, fresh: usize },
    /// The destination holds the bundle. Absorbing.
    Succ,
}

impl fmt::Display for EpidemicState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EpidemicState::Init => f.write_str("Init"),
            EpidemicState::Pair { earlier, fresh } => write!(f, "({earlier},{fresh})"),
            EpidemicState::Succ => f.write_str("Succ"),
        }
    }
}

/// `2 + N(N-1)/2`.
pub fn state_count(n_nodes: usize) -> usize {
    2 + n_nodes * (n_nodes - 1) / 2
}

/// Canonical ordering of the state space for `n_nodes >= 2`: `Init`, then every
/// `Pair` sorted by `(earlier, fresh)`, then `Succ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateSpace {
    n_nodes: usize,
    states: Vec<EpidemicState>,
}

impl StateSpace {
    pub fn new(n_nodes: usize) -> Self {
        assert!(n_nodes >= 2, "state space needs at least 2 nodes");
        let mut states = Vec::with_capacity(state_count(n_nodes));
        states.push(EpidemicState::Init);
        for earlier in 1..n_nodes {
            for fresh in 0..n_nodes - earlier {
                states.push(EpidemicState::Pair { earlier, fresh });
            }
        }
        states.push(EpidemicState::Succ);
        Self { n_nodes, states }
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[EpidemicState] {
        &self.states
    }

    pub fn init_index(&self) -> usize {
        0
    }

    pub fn succ_index(&self) -> usize {
        self.states.len() - 1
    }

    /// Position of `Pair(earlier, fresh)`; panics if the pair is out of range.
    pub fn pair_index(&self, earlier: usize, fresh: usize) -> usize {
        let n = self.n_nodes;
        assert!(
            earlier >= 1 && earlier < n && fresh < n - earlier,
            "Pair({earlier},{fresh}) is not a state for N = {n}"
        );
        // Rows 1..earlier hold N-1, N-2, ... pairs each.
        let before = (earlier - 1) * n - (earlier - 1) * earlier / 2;
        1 + before + fresh
    }

    pub fn index_of(&self, state: EpidemicState) -> Option<usize> {
        match state {
            EpidemicState::Init => Some(self.init_index()),
            EpidemicState::Succ => Some(self.succ_index()),
            EpidemicState::Pair { earlier, fresh } => {
                let valid =
                    earlier >= 1 && earlier < self.n_nodes && fresh < self.n_nodes - earlier;
                valid.then(|| self.pair_index(earlier, fresh))
            }
        }
    }
}

pub fn enumerate_states(n_nodes: usize) -> Vec<EpidemicState> {
    StateSpace::new(n_nodes).states
}
