//! Contact traces: CSV ingestion, link statistics and epidemic replay.
//!
//! A trace is UTF-8 text with one contact sighting per line,
//! `time_seconds,node_a,node_b`; lines starting with `#` are comments.

mod parse;
mod replay;
mod stats;

pub use parse::{parse_trace, write_trace, ContactRecord, ParsedTrace};
pub use replay::{replay_experiment, ReplayConfig};
pub use stats::{link_runs, trace_stats, LinkRunSummary};
