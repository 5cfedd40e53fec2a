//! Monte Carlo oracle: explicit edge-Markovian graphs and epidemic flooding.

pub(crate) mod estimate;
mod flood;
mod graph;
mod sample;

pub use estimate::{estimate_delivery, SimConfig, SimEstimate};
pub use flood::{flood, FloodOutcome};
pub use graph::{DynamicGraph, Edge};
pub use sample::{sample_graph, sample_graph_with, EdgeChain, EdgeInit};
