//! The tagged union of certificates every search returns, plus the single
//! universal verifier. A witness is self-contained: the verdict is
//! recomputable from the host graph and the payload alone.

use crate::detect::count_c4;
use crate::graph::{Graph, Rational};
use crate::hypergraph::{BalancedSubdivision, OneSubdivision};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Witness {
    /// Pairwise adjacent vertex set.
    Clique { vertices: Vec<usize> },
    /// Two disjoint equal-size sets, complete between (sides may span edges).
    KssSubgraph { left: Vec<usize>, right: Vec<usize> },
    /// Two disjoint independent sets, complete between: an induced K_{s,t}.
    InducedKst { small: Vec<usize>, large: Vec<usize> },
    /// Induced subgraph with no 4-cycle and average degree >= the claim.
    C4FreeDense { vertices: Vec<usize>, min_avg: Rational },
    /// Induced proper balanced subdivision of a clique.
    InducedBalancedSubdivision(BalancedSubdivision),
    /// Induced 1-subdivision of a uniform multihypergraph.
    OneSubdivision(OneSubdivision),
}

impl Witness {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Witness::Clique { .. } => "Clique",
            Witness::KssSubgraph { .. } => "KssSubgraph",
            Witness::InducedKst { .. } => "InducedKst",
            Witness::C4FreeDense { .. } => "C4FreeDense",
            Witness::InducedBalancedSubdivision(_) => "InducedBalancedSubdivision",
            Witness::OneSubdivision(_) => "OneSubdivision",
        }
    }
}

/// Verification failure naming the first violated clause.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reject {
    pub clause: String,
}

impl std::fmt::Display for Reject {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "witness rejected: {}", self.clause)
    }
}

impl std::error::Error for Reject {}

fn reject(clause: impl Into<String>) -> Result<(), Reject> {
    Err(Reject { clause: clause.into() })
}

fn check_range(g: &Graph, verts: &[usize]) -> Result<(), Reject> {
    for &v in verts {
        if v >= g.n() {
            return reject(format!("vertex {v} out of range (n = {})", g.n()));
        }
    }
    Ok(())
}

fn check_distinct(label: &str, verts: &[usize]) -> Result<(), Reject> {
    let mut s = verts.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.len() != verts.len() {
        return reject(format!("{label} vertices repeat"));
    }
    Ok(())
}

/// Checks a witness against its host graph. Accepts iff every clause of
/// the witness kind's definition holds; the rejection names the first
/// violated clause.
pub fn verify_witness(g: &Graph, w: &Witness) -> Result<(), Reject> {
    match w {
        Witness::Clique { vertices } => {
            check_range(g, vertices)?;
            check_distinct("clique", vertices)?;
            if vertices.is_empty() {
                return reject("empty clique");
            }
            for (i, &u) in vertices.iter().enumerate() {
                for &v in &vertices[i + 1..] {
                    if !g.has_edge(u, v) {
                        return reject(format!("clique pair {{{u},{v}}} not adjacent"));
                    }
                }
            }
            Ok(())
        }
        Witness::KssSubgraph { left, right } => {
            check_range(g, left)?;
            check_range(g, right)?;
            check_distinct("left", left)?;
            check_distinct("right", right)?;
            if left.is_empty() || left.len() != right.len() {
                return reject("biclique sides empty or of unequal size");
            }
            if left.iter().any(|u| right.contains(u)) {
                return reject("biclique sides intersect");
            }
            for &u in left {
                for &v in right {
                    if !g.has_edge(u, v) {
                        return reject(format!("biclique pair {{{u},{v}}} not adjacent"));
                    }
                }
            }
            Ok(())
        }
        Witness::InducedKst { small, large } => {
            check_range(g, small)?;
            check_range(g, large)?;
            check_distinct("small side", small)?;
            check_distinct("large side", large)?;
            if small.is_empty() || large.is_empty() {
                return reject("biclique side empty");
            }
            if small.iter().any(|u| large.contains(u)) {
                return reject("biclique sides intersect");
            }
            if !g.is_independent(small) {
                return reject("small side not independent (induced violation)");
            }
            if !g.is_independent(large) {
                return reject("large side not independent (induced violation)");
            }
            for &u in small {
                for &v in large {
                    if !g.has_edge(u, v) {
                        return reject(format!("biclique pair {{{u},{v}}} not adjacent"));
                    }
                }
            }
            Ok(())
        }
        Witness::C4FreeDense { vertices, min_avg } => {
            check_range(g, vertices)?;
            check_distinct("payload", vertices)?;
            if vertices.is_empty() {
                return reject("empty payload");
            }
            let (sub, _) = g.induced(vertices).map_err(|e| Reject { clause: e.to_string() })?;
            if count_c4(&sub) != 0 {
                return reject("payload induces a 4-cycle");
            }
            if sub.average_degree() < *min_avg {
                return reject(format!(
                    "average degree {} below claim {}",
                    sub.average_degree(),
                    min_avg
                ));
            }
            Ok(())
        }
        Witness::InducedBalancedSubdivision(b) => b.verify_induced(g).map_err(|e| Reject { clause: e.to_string() }),
        Witness::OneSubdivision(w) => w.verify(g).map_err(|e| Reject { clause: e.to_string() }),
    }
}

/// A witness that has passed verification against its host. The only
/// constructor runs the verifier, so drivers cannot hand out unchecked
/// certificates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifiedWitness {
    witness: Witness,
}

impl VerifiedWitness {
    pub fn new(g: &Graph, witness: Witness) -> Result<VerifiedWitness, Reject> {
        verify_witness(g, &witness)?;
        Ok(VerifiedWitness { witness })
    }

    pub fn witness(&self) -> &Witness {
        &self.witness
    }

    pub fn into_witness(self) -> Witness {
        self.witness
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::graph::rational;
    use crate::hypergraph::{build_one_subdivision, Multihypergraph, SubPath};

    #[test]
    fn one_subdivision_accept_and_induced_reject() {
        let k4 = Multihypergraph {
            n: 4,
            uniformity: 2,
            edges: vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]],
        };
        let (g, w) = build_one_subdivision(&k4);
        verify_witness(&g, &Witness::OneSubdivision(w.clone())).unwrap();

        // adding a chord between two branch vertices breaks inducedness
        let mut edges: Vec<(usize, usize)> = g.edges().collect();
        edges.push((0, 1));
        let chorded = Graph::from_edges(g.n(), &edges).unwrap();
        let err = verify_witness(&chorded, &Witness::OneSubdivision(w)).unwrap_err();
        assert!(err.clause.contains("independent") || err.clause.contains("induced"), "{err}");
    }

    #[test]
    fn balanced_proper_clause() {
        let k4 = Graph::complete(4);
        let direct = BalancedSubdivision {
            branch: vec![0, 1, 2, 3],
            paths: (0..4)
                .flat_map(|i| ((i + 1)..4).map(move |j| SubPath { ends: (i, j), inner: vec![] }))
                .collect(),
        };
        let err = verify_witness(&k4, &Witness::InducedBalancedSubdivision(direct)).unwrap_err();
        assert!(err.clause.contains("proper"), "{err}");
    }

    #[test]
    fn c4free_dense_checks_both_clauses() {
        let h = gen::heawood();
        let all: Vec<usize> = (0..14).collect();
        verify_witness(&h, &Witness::C4FreeDense { vertices: all.clone(), min_avg: rational(3, 1) }).unwrap();
        let err = verify_witness(&h, &Witness::C4FreeDense { vertices: all, min_avg: rational(4, 1) }).unwrap_err();
        assert!(err.clause.contains("below claim"));
        let c4 = Graph::cycle(4);
        let err = verify_witness(&c4, &Witness::C4FreeDense { vertices: vec![0, 1, 2, 3], min_avg: rational(1, 1) })
            .unwrap_err();
        assert!(err.clause.contains("4-cycle"));
    }

    #[test]
    fn kinds_reject_mislabels() {
        let k3 = Graph::complete(3);
        verify_witness(&k3, &Witness::Clique { vertices: vec![0, 1, 2] }).unwrap();
        let p3 = Graph::path(3);
        assert!(verify_witness(&p3, &Witness::Clique { vertices: vec![0, 1, 2] }).is_err());
        let c4 = Graph::cycle(4);
        verify_witness(&c4, &Witness::InducedKst { small: vec![0, 2], large: vec![1, 3] }).unwrap();
        let k4 = Graph::complete(4);
        assert!(verify_witness(&k4, &Witness::InducedKst { small: vec![0, 2], large: vec![1, 3] }).is_err());
        verify_witness(&k4, &Witness::KssSubgraph { left: vec![0, 2], right: vec![1, 3] }).unwrap();
    }

    #[test]
    fn witness_documents_roundtrip() {
        let w = Witness::InducedKst { small: vec![0, 2], large: vec![1, 3] };
        let json = serde_json::to_string(&w).unwrap();
        let back: Witness = serde_json::from_str(&json).unwrap();
        assert_eq!(w, back);
    }
}
