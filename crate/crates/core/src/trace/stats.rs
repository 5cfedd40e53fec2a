use std::collections::HashMap;

use crate::sim::{DynamicGraph, Edge};
use crate::TraceStats;

/// Maximal contiguous up-runs over all edges of a trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LinkRunSummary {
    pub runs: u64,
    /// Runs still up in the final snapshot, counted at their observed length.
    pub censored: u64,
    /// Sum of run lengths, in steps.
    pub total_steps: u64,
}

impl LinkRunSummary {
    pub fn mean_steps(&self) -> f64 {
        if self.runs == 0 {
            0.0
        } else {
            self.total_steps as f64 / self.runs as f64
        }
    }
}

pub fn link_runs(graph: &DynamicGraph) -> LinkRunSummary {
    // (current run length, last step seen up)
    let mut open: HashMap<Edge, (u64, usize)> = HashMap::new();
    let mut summary = LinkRunSummary::default();
    for (k, edges) in graph.snapshots().iter().enumerate() {
        for &e in edges {
            let run = open.entry(e).or_insert((0, k));
            if run.0 > 0 && run.1 + 1 == k {
                run.0 += 1;
            } else {
                if run.0 > 0 {
                    summary.runs += 1;
                    summary.total_steps += run.0;
                }
                run.0 = 1;
            }
            run.1 = k;
        }
    }
    let last = graph.len() - 1;
    for (len, seen) in open.into_values() {
        summary.runs += 1;
        summary.total_steps += len;
        if seen == last {
            summary.censored += 1;
        }
    }
    summary
}

/// Mean link lifetime (seconds) and mean node degree of a discretized trace.
/// Links still up at the end of the trace count at their observed length.
pub fn trace_stats(graph: &DynamicGraph) -> TraceStats {
    let runs = link_runs(graph);
    let n = graph.n_nodes();
    let mean_degree = if n == 0 {
        0.0
    } else {
        let edge_total: usize = graph.snapshots().iter().map(Vec::len).sum();
        2.0 * edge_total as f64 / (n as f64 * graph.len() as f64)
    };
    TraceStats {
        n_nodes: n,
        mean_link_lifetime: runs.mean_steps() * graph.tau(),
        mean_degree,
        tau: graph.tau(),
    }
}
