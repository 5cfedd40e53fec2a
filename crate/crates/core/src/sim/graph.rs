use crate::{Error, Result};

/// Undirected edge stored with `0 <= a < b < n_nodes`.
pub type Edge = (u32, u32);

/// Time-indexed sequence of static connectivity graphs over `n_nodes` nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct DynamicGraph {
    n_nodes: usize,
    tau: f64,
    snapshots: Vec<Vec<Edge>>,
}

impl DynamicGraph {
    /// Edges may be given in either orientation and with duplicates; each
    /// snapshot is normalized to a sorted list of `(min, max)` pairs.
    pub fn new(n_nodes: usize, tau: f64, snapshots: Vec<Vec<Edge>>) -> Result<Self> {
        if snapshots.is_empty() {
            return Err(Error::InvalidGraph(
                "at least one snapshot is required".into(),
            ));
        }
        if !(tau.is_finite() && tau > 0.0) {
            return Err(Error::InvalidParameter {
                name: "tau",
                value: tau,
                reason: "time step must be positive and finite",
            });
        }
        let mut snapshots = snapshots;
        for (k, edges) in snapshots.iter_mut().enumerate() {
            for e in edges.iter_mut() {
                let (a, b) = *e;
                if a == b {
                    return Err(Error::InvalidGraph(format!(
                        "self-loop on node {a} in snapshot {k}"
                    )));
                }
                if a.max(b) as usize >= n_nodes {
                    return Err(Error::InvalidGraph(format!(
                        "edge ({a},{b}) in snapshot {k} exceeds {n_nodes} nodes"
                    )));
                }
                *e = (a.min(b), a.max(b));
            }
            edges.sort_unstable();
            edges.dedup();
        }
        Ok(Self {
            n_nodes,
            tau,
            snapshots,
        })
    }

    pub(crate) fn from_sorted(n_nodes: usize, tau: f64, snapshots: Vec<Vec<Edge>>) -> Self {
        debug_assert!(!snapshots.is_empty());
        Self {
            n_nodes,
            tau,
            snapshots,
        }
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// Number of snapshots.
    pub fn len(&self) -> usize {
        self.snapshots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.snapshots.is_empty()
    }

    pub fn snapshot(&self, step: usize) -> &[Edge] {
        &self.snapshots[step]
    }

    pub fn snapshots(&self) -> &[Vec<Edge>] {
        &self.snapshots
    }

    pub fn has_edge(&self, step: usize, a: u32, b: u32) -> bool {
        self.snapshots[step]
            .binary_search(&(a.min(b), a.max(b)))
            .is_ok()
    }

    /// Same snapshots over a larger node set (isolated extra nodes).
    pub fn with_node_count(mut self, n_nodes: usize) -> Result<Self> {
        if n_nodes < self.n_nodes {
            return Err(Error::InvalidGraph(format!(
                "cannot shrink a {}-node graph to {n_nodes} nodes",
                self.n_nodes
            )));
        }
        self.n_nodes = n_nodes;
        Ok(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_edges() {
        let g = DynamicGraph::new(4, 1.0, vec![vec![(3, 1), (0, 2), (1, 3)], vec![]]).unwrap();
        assert_eq!(g.snapshot(0), &[(0, 2), (1, 3)]);
        assert!(g.has_edge(0, 3, 1));
        assert!(!g.has_edge(1, 3, 1));
        assert_eq!(g.len(), 2);
    }

    #[test]
    fn rejects_bad_graphs() {
        assert!(DynamicGraph::new(3, 1.0, vec![]).is_err());
        assert!(DynamicGraph::new(3, 1.0, vec![vec![(1, 1)]]).is_err());
        assert!(DynamicGraph::new(3, 1.0, vec![vec![(0, 3)]]).is_err());
        assert!(DynamicGraph::new(3, 0.0, vec![vec![]]).is_err());
    }

    #[test]
    fn grows_node_set() {
        let g = DynamicGraph::new(2, 1.0, vec![vec![(0, 1)]]).unwrap();
        assert_eq!(g.clone().with_node_count(5).unwrap().n_nodes(), 5);
        assert!(g.with_node_count(1).is_err());
    }
}
