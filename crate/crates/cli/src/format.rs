//! On-disk formats: the edge-list graph file and the JSON witness
//! document. Both round-trip losslessly and the document verdict is
//! recomputable from the graph plus the payload alone.

use indsub_core::graph::Graph;
use indsub_core::trace::{RunTrace, TraceEntry};
use indsub_core::witness::Witness;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Parses the edge-list format: a header `n m`, then `m` lines `u v` with
/// `0 <= u < v < n`, no duplicates.
pub fn parse_edge_list(text: &str) -> Result<Graph, String> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or("empty file")?;
    let mut it = header.split_whitespace();
    let n: usize = it
        .next()
        .ok_or("header missing vertex count")?
        .parse()
        .map_err(|e| format!("line 1: bad vertex count: {e}"))?;
    let m: usize = it
        .next()
        .ok_or("header missing edge count")?
        .parse()
        .map_err(|e| format!("line 1: bad edge count: {e}"))?;
    let mut edges = Vec::with_capacity(m);
    let mut seen = std::collections::BTreeSet::new();
    for (idx, line) in lines {
        let lineno = idx + 1;
        let mut it = line.split_whitespace();
        let u: usize = it
            .next()
            .ok_or(format!("line {lineno}: missing endpoint"))?
            .parse()
            .map_err(|e| format!("line {lineno}: bad endpoint: {e}"))?;
        let v: usize = it
            .next()
            .ok_or(format!("line {lineno}: missing endpoint"))?
            .parse()
            .map_err(|e| format!("line {lineno}: bad endpoint: {e}"))?;
        if it.next().is_some() {
            return Err(format!("line {lineno}: trailing tokens"));
        }
        if u >= v {
            return Err(format!("line {lineno}: endpoints must satisfy u < v"));
        }
        if v >= n {
            return Err(format!("line {lineno}: vertex {v} out of range (n = {n})"));
        }
        if !seen.insert((u, v)) {
            return Err(format!("line {lineno}: duplicate edge {u} {v}"));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(format!("header declares {m} edges, found {}", edges.len()));
    }
    Graph::from_edges(n, &edges).map_err(|e| e.to_string())
}

/// Emits the edge-list format, edges sorted lexicographically.
pub fn emit_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// JSON certificate: witness payload (or failure reason), run parameters,
/// seed, trace digest and the verifier verdict.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct WitnessDocument {
    pub kind: String,
    pub witness: Option<Witness>,
    pub driver: String,
    pub parameters: BTreeMap<String, String>,
    pub seed: u64,
    pub budget: u32,
    pub trace_digest: String,
    pub verifier_verdict: String,
    pub failure_reason: Option<String>,
    pub trace: Vec<TraceEntry>,
}

impl WitnessDocument {
    pub fn from_run(
        driver: &str,
        parameters: BTreeMap<String, String>,
        seed: u64,
        budget: u32,
        result: &Result<indsub_core::witness::VerifiedWitness, indsub_core::pipeline::Failure>,
        trace: &RunTrace,
    ) -> Self {
        match result {
            Ok(v) => WitnessDocument {
                kind: v.witness().kind_name().to_string(),
                witness: Some(v.witness().clone()),
                driver: driver.to_string(),
                parameters,
                seed,
                budget,
                trace_digest: trace.digest(),
                verifier_verdict: "accept".to_string(),
                failure_reason: None,
                trace: trace.entries.clone(),
            },
            Err(f) => WitnessDocument {
                kind: "Failure".to_string(),
                witness: None,
                driver: driver.to_string(),
                parameters,
                seed,
                budget,
                trace_digest: trace.digest(),
                verifier_verdict: "no-witness".to_string(),
                failure_reason: Some(f.reason.clone()),
                trace: trace.entries.clone(),
            },
        }
    }
}
