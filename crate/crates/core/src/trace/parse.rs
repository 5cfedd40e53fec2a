use std::collections::HashMap;
use std::io::{Read, Write};

use crate::sim::DynamicGraph;
use crate::{Error, Result};

// Times within this fraction of a step below a bucket boundary are placed on
// the boundary, so that e.g. t = 0.3 with tau = 0.1 lands in snapshot 3.
const BOUNDARY_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct ContactRecord {
    pub time: f64,
    pub node_a: String,
    pub node_b: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParsedTrace {
    pub graph: DynamicGraph,
    /// Original identifier of each dense node index.
    pub node_ids: Vec<String>,
    pub records: usize,
}

fn read_records<R: Read>(input: R) -> Result<Vec<ContactRecord>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(input);
    let mut records = Vec::new();
    for row in reader.records() {
        let row = row?;
        let line = row.position().map_or(0, |p| p.line());
        let fail = |message: String| Error::TraceParse { line, message };
        if row.len() != 3 {
            return Err(fail(format!(
                "expected 3 fields (time,node_a,node_b), found {}",
                row.len()
            )));
        }
        let time: f64 = row[0]
            .parse()
            .map_err(|_| fail(format!("invalid time {:?}", &row[0])))?;
        if !time.is_finite() || time < 0.0 {
            return Err(fail(format!("time {time} must be a non-negative number")));
        }
        if row[1].is_empty() || row[2].is_empty() {
            return Err(fail("empty node identifier".into()));
        }
        if row[1] == row[2] {
            return Err(fail(format!("self-contact of node {:?}", &row[1])));
        }
        records.push(ContactRecord {
            time,
            node_a: row[1].to_string(),
            node_b: row[2].to_string(),
        });
    }
    Ok(records)
}

/// Discretizes a contact trace into snapshots of length `tau`.
///
/// Snapshot `k` holds edge `{a, b}` iff some record for that pair has a time in
/// `[k tau, (k+1) tau)`. Node identifiers get dense indices in order of first
/// appearance in the input.
pub fn parse_trace<R: Read>(input: R, tau: f64) -> Result<ParsedTrace> {
    if !(tau.is_finite() && tau > 0.0) {
        return Err(Error::InvalidParameter {
            name: "tau",
            value: tau,
            reason: "sampling period must be positive and finite",
        });
    }
    let records = read_records(input)?;
    if records.is_empty() {
        return Err(Error::EmptyTrace);
    }

    let mut index: HashMap<&str, u32> = HashMap::new();
    let mut node_ids: Vec<String> = Vec::new();
    let mut bucketed = Vec::with_capacity(records.len());
    for r in &records {
        let mut endpoints = [0u32; 2];
        for (slot, id) in endpoints
            .iter_mut()
            .zip([r.node_a.as_str(), r.node_b.as_str()])
        {
            *slot = *index.entry(id).or_insert_with(|| {
                node_ids.push(id.to_string());
                (node_ids.len() - 1) as u32
            });
        }
        let [a, b] = endpoints;
        let step = (r.time / tau + BOUNDARY_SLACK).floor() as usize;
        bucketed.push((step, a, b));
    }
    let steps = bucketed.iter().map(|(k, _, _)| k + 1).max().unwrap_or(1);
    let mut snapshots = vec![Vec::new(); steps];
    for (k, a, b) in bucketed {
        snapshots[k].push((a, b));
    }
    let graph = DynamicGraph::new(node_ids.len(), tau, snapshots)?;
    Ok(ParsedTrace {
        graph,
        node_ids,
        records: records.len(),
    })
}

/// Writes one record per edge per snapshot at time `k * tau`, naming nodes by
/// their index.
pub fn write_trace<W: Write>(graph: &DynamicGraph, output: W) -> Result<()> {
    let mut out = std::io::BufWriter::new(output);
    writeln!(out, "# time_seconds,node_a,node_b")?;
    for (k, edges) in graph.snapshots().iter().enumerate() {
        let time = k as f64 * graph.tau();
        for (a, b) in edges {
            writeln!(out, "{time},{a},{b}")?;
        }
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::sample_graph;
    use crate::EdgeMarkovParams;
    use proptest::prelude::*;

    fn parse(text: &str, tau: f64) -> Result<ParsedTrace> {
        parse_trace(text.as_bytes(), tau)
    }

    #[test]
    fn single_record() {
        let t = parse("0,A,B\n", 15.0).unwrap();
        assert_eq!(t.graph.len(), 1);
        assert_eq!(t.graph.n_nodes(), 2);
        assert_eq!(t.graph.snapshot(0), &[(0, 1)]);
        assert_eq!(t.node_ids, vec!["A", "B"]);
    }

    #[test]
    fn bucketing_by_floor() {
        let t = parse("0,A,B\n15,A,B\n45,A,B\n", 15.0).unwrap();
        let up: Vec<bool> = (0..4).map(|k| t.graph.has_edge(k, 0, 1)).collect();
        assert_eq!(up, vec![true, true, false, true]);
    }

    #[test]
    fn boundary_and_unsorted_input() {
        let t = parse("# header\n0.3,x,y\n\n0.05,y,z\n0.1999,x,z\n", 0.1).unwrap();
        assert_eq!(t.node_ids, vec!["x", "y", "z"]);
        assert_eq!(t.graph.len(), 4);
        assert_eq!(t.graph.snapshot(0), &[(1, 2)]);
        assert_eq!(t.graph.snapshot(1), &[(0, 2)]);
        assert!(t.graph.snapshot(2).is_empty());
        assert_eq!(t.graph.snapshot(3), &[(0, 1)]);
    }

    #[test]
    fn asymmetric_sightings_merge() {
        let t = parse("1,A,B\n2,B,A\n", 15.0).unwrap();
        assert_eq!(t.graph.snapshot(0), &[(0, 1)]);
    }

    #[test]
    fn malformed_lines_report_their_number() {
        let err = |text: &str| match parse(text, 1.0) {
            Err(Error::TraceParse { line, .. }) => line,
            other => panic!("expected a parse error, got {other:?}"),
        };
        assert_eq!(err("0,A,B\n1,A\n"), 2);
        assert_eq!(err("#c\n0,A,B\n-1,A,B\n"), 3);
        assert_eq!(err("0,A,A\n"), 1);
        assert_eq!(err("0,A,B,C\n"), 1);
        assert_eq!(err("soon,A,B\n"), 1);
    }

    #[test]
    fn empty_stream() {
        assert!(matches!(parse("", 1.0), Err(Error::EmptyTrace)));
        assert!(matches!(parse("# nothing\n", 1.0), Err(Error::EmptyTrace)));
        assert!(parse("0,A,B\n", 0.0).is_err());
    }

    // Relabels nodes by first appearance in the serialized record order.
    fn relabel_by_first_contact(graph: &DynamicGraph) -> (Vec<Vec<(u32, u32)>>, usize) {
        let mut label: HashMap<u32, u32> = HashMap::new();
        let mut next = 0;
        let mut assign = |v: u32| {
            *label.entry(v).or_insert_with(|| {
                next += 1;
                next - 1
            })
        };
        let snapshots: Vec<Vec<(u32, u32)>> = graph
            .snapshots()
            .iter()
            .map(|s| s.iter().map(|&(a, b)| (assign(a), assign(b))).collect())
            .collect();
        (snapshots, next as usize)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn serialize_then_parse_is_identity(
            seed in any::<u64>(),
            n in 2usize..12,
            tau in prop::sample::select(vec![1.0, 0.1, 15.0, 2.5]),
        ) {
            let p = EdgeMarkovParams::new(0.2, 0.3, tau).unwrap();
            let sampled = sample_graph(&p, n, 40, seed).unwrap();
            prop_assume!(sampled.snapshots().iter().any(|s| !s.is_empty()));
            let mut buf = Vec::new();
            write_trace(&sampled, &mut buf).unwrap();
            let parsed = parse_trace(buf.as_slice(), tau).unwrap();

            let (expected, seen) = relabel_by_first_contact(&sampled);
            prop_assert_eq!(parsed.graph.n_nodes(), seen);
            prop_assert!(parsed.graph.len() <= sampled.len());
            for (k, edges) in expected.iter().enumerate() {
                let mut edges: Vec<(u32, u32)> =
                    edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
                edges.sort_unstable();
                if k < parsed.graph.len() {
                    prop_assert_eq!(parsed.graph.snapshot(k), edges.as_slice());
                } else {
                    prop_assert!(edges.is_empty());
                }
            }
        }
    }

    #[test]
    fn round_trip_is_exact_for_canonically_labelled_graphs() {
        let g = DynamicGraph::new(
            4,
            15.0,
            vec![vec![(0, 1)], vec![(0, 1), (2, 3)], vec![], vec![(1, 2)]],
        )
        .unwrap();
        let mut buf = Vec::new();
        write_trace(&g, &mut buf).unwrap();
        assert_eq!(parse_trace(buf.as_slice(), 15.0).unwrap().graph, g);
    }
}
