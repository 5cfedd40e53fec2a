//! Absorbing Markov chain of an epidemic spreading over an edge-Markovian
//! dynamic graph.
//!
//! The chain only tracks how many relays were infected before the current step
//! (`earlier`) and how many were infected during it (`fresh`). A freshly
//! infected node's links to susceptible nodes are still in their stationary
//! state, so each is usable next step with probability `pi_up`; a node infected
//! earlier has already failed to reach them, so its links must come up, with
//! probability `p_up`. The destination's first infection is the absorbing
//! `Succ` state, and the delivery ratio within `d` steps is the mass in `Succ`
//! after `d` steps from `Init`.

mod binomial;
mod bounds;
mod delivery;
mod matrix;
mod states;

pub use binomial::{binomial_pmf, p_inf, p_succ};
pub use bounds::{effective_params_lower, effective_params_upper, EffectiveRates, LowerBoundMode};
pub use delivery::{
    delivery_curve, delivery_ratio, delivery_ratio_with_mode, evolve, DeliveryQuery, DeliveryResult,
};
pub use matrix::{
    build_dynamic_matrix, build_lower_bound_matrix, build_matrix, build_static_matrix,
    build_upper_bound_matrix, InfectionRates, TransitionMatrix, MAX_NODES,
};
pub use states::{enumerate_states, state_count, EpidemicState, StateSpace};
