//! Epidemic (flooding) routing on edge-Markovian dynamic graphs.
//!
//! Every potential link between `N` mobile nodes is an independent two-state
//! Markov chain that goes up with probability `p_up` and down with probability
//! `p_down` at the start of each time step. On top of that process this crate
//! provides:
//!
//! * [`model`]: the per-edge process, its stationary quantities and the
//!   estimation of `(p_up, p_down)` from contact-trace statistics;
//! * [`chain`]: the absorbing Markov chain over infection counts, which gives
//!   the exact delivery ratio for bundles no larger than a link slot and
//!   lower/upper bounds for larger bundles;
//! * [`sim`]: an explicit Monte Carlo simulator of the same process, used as
//!   an independent oracle for the chain;
//! * [`trace`]: ingestion, statistics and replay of real contact traces.

pub mod bundle;
pub mod chain;
mod error;
pub mod experiment;
pub mod model;
pub mod sim;
pub mod trace;

pub use bundle::{BundleRegime, BundleSize};
pub use chain::{
    build_dynamic_matrix, build_lower_bound_matrix, build_static_matrix, build_upper_bound_matrix,
    delivery_curve, delivery_ratio, delivery_ratio_with_mode, effective_params_lower,
    effective_params_upper, enumerate_states, evolve, p_inf, p_succ, DeliveryQuery, DeliveryResult,
    EffectiveRates, EpidemicState, LowerBoundMode, TransitionMatrix,
};
pub use error::{Error, Result};
pub use experiment::{ExperimentResult, Observation, ValueSource};
pub use model::{
    estimate_params, mean_degree, stationary_stats, EdgeMarkovParams, StationaryStats, TraceStats,
};
pub use sim::{
    estimate_delivery, flood, sample_graph, DynamicGraph, FloodOutcome, SimConfig, SimEstimate,
};
pub use trace::{
    link_runs, parse_trace, replay_experiment, trace_stats, write_trace, ContactRecord,
    LinkRunSummary, ParsedTrace, ReplayConfig,
};
