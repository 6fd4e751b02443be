//! Multihypergraphs, their 1-subdivisions (incidence witnesses inside a
//! host graph) and balanced clique subdivisions. The witness types carry
//! host vertex ids only; every structural claim is re-derivable from the
//! host graph plus the payload.

use crate::error::OpError;
use crate::graph::{contains_sorted, Graph, Rational};
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

/// Vertex set plus a multiset of `uniformity`-sized edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multihypergraph {
    pub n: usize,
    pub uniformity: usize,
    pub edges: Vec<Vec<usize>>,
}

impl Multihypergraph {
    pub fn validate(&self) -> Result<(), OpError> {
        for e in &self.edges {
            if e.len() != self.uniformity {
                return Err(OpError::InvariantViolation { clause: format!("edge arity {} != {}", e.len(), self.uniformity) });
            }
            let mut s = e.clone();
            s.sort_unstable();
            s.dedup();
            if s.len() != self.uniformity {
                return Err(OpError::InvariantViolation { clause: "edge has repeated vertices".into() });
            }
            if let Some(&v) = s.iter().find(|&&v| v >= self.n) {
                return Err(OpError::OutOfRange { index: v, n: self.n });
            }
        }
        Ok(())
    }

    /// Average degree `uniformity * |E| / n`.
    pub fn average_degree(&self) -> Rational {
        if self.n == 0 {
            return Rational::from_integer(0);
        }
        Ratio::new((self.uniformity * self.edges.len()) as i64, self.n as i64)
    }

    /// True when no edge repeats.
    pub fn is_simple(&self) -> bool {
        let mut sorted: Vec<Vec<usize>> = self
            .edges
            .iter()
            .map(|e| {
                let mut s = e.clone();
                s.sort_unstable();
                s
            })
            .collect();
        sorted.sort();
        sorted.windows(2).all(|w| w[0] != w[1])
    }

    /// Maximum multiplicity over distinct edges (0 for the edgeless graph).
    pub fn max_multiplicity(&self) -> usize {
        let mut sorted: Vec<Vec<usize>> = self
            .edges
            .iter()
            .map(|e| {
                let mut s = e.clone();
                s.sort_unstable();
                s
            })
            .collect();
        sorted.sort();
        let mut best = 0;
        let mut i = 0;
        while i < sorted.len() {
            let mut j = i + 1;
            while j < sorted.len() && sorted[j] == sorted[i] {
                j += 1;
            }
            best = best.max(j - i);
            i = j;
        }
        best
    }
}

/// An induced 1-subdivision witness: `a` holds the edge-vertices, `b` the
/// branch vertices; every `a`-vertex is adjacent to exactly `uniformity`
/// vertices of `b`, both sides are independent, and the host induces no
/// edge on `a u b` beyond those incidences.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneSubdivision {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub uniformity: usize,
}

impl OneSubdivision {
    pub fn new(mut a: Vec<usize>, mut b: Vec<usize>, uniformity: usize) -> Self {
        a.sort_unstable();
        a.dedup();
        b.sort_unstable();
        b.dedup();
        OneSubdivision { a, b, uniformity }
    }

    /// Full invariant check; the error names the first violated clause.
    pub fn verify(&self, g: &Graph) -> Result<(), OpError> {
        let bad = |clause: String| Err(OpError::InvariantViolation { clause });
        for &v in self.a.iter().chain(self.b.iter()) {
            if v >= g.n() {
                return Err(OpError::OutOfRange { index: v, n: g.n() });
            }
        }
        if crate::graph::intersect_count(&self.a, &self.b) > 0 {
            return bad("subdivision sides not disjoint".into());
        }
        for &x in &self.a {
            if g.degree_into(x, &self.a) > 0 {
                return bad(format!("edge-vertex side not independent at {x}"));
            }
            let into_b = g.degree_into(x, &self.b);
            if into_b != self.uniformity {
                return bad(format!(
                    "edge-vertex {x} meets {} branch vertices, expected {}",
                    into_b, self.uniformity
                ));
            }
        }
        for &y in &self.b {
            if g.degree_into(y, &self.b) > 0 {
                return bad(format!("branch side not independent at {y} (induced violation)"));
            }
        }
        Ok(())
    }

    /// The multihypergraph this witness subdivides, with branch vertices
    /// relabeled to `0..|b|` in sorted order.
    pub fn recover_hypergraph(&self, g: &Graph) -> Result<Multihypergraph, OpError> {
        self.verify(g)?;
        let edges = self
            .a
            .iter()
            .map(|&x| {
                g.neighbors(x)
                    .iter()
                    .filter(|&&y| contains_sorted(&self.b, y))
                    .map(|&y| self.b.binary_search(&y).unwrap())
                    .collect()
            })
            .collect();
        Ok(Multihypergraph { n: self.b.len(), uniformity: self.uniformity, edges })
    }

    /// Average degree of the subdivided hypergraph.
    pub fn base_average_degree(&self) -> Rational {
        if self.b.is_empty() {
            return Rational::from_integer(0);
        }
        Ratio::new((self.uniformity * self.a.len()) as i64, self.b.len() as i64)
    }
}

/// Builds the host graph that *is* the 1-subdivision of `h`, together with
/// its witness. Branch vertices occupy `0..h.n`, edge-vertices follow in
/// edge order. Test and generator support.
pub fn build_one_subdivision(h: &Multihypergraph) -> (Graph, OneSubdivision) {
    h.validate().expect("valid multihypergraph");
    let mut edges = Vec::new();
    for (i, e) in h.edges.iter().enumerate() {
        let ev = h.n + i;
        for &v in e {
            edges.push((ev, v));
        }
    }
    let g = Graph::from_edges(h.n + h.edges.len(), &edges).unwrap();
    let w = OneSubdivision::new((h.n..h.n + h.edges.len()).collect(), (0..h.n).collect(), h.uniformity);
    (g, w)
}

/// Restriction of a witness to a sub-hypergraph: drop the listed edge
/// indices (positions in `w.a`) and base vertex indices (positions in
/// `w.b`); edges touching a dropped vertex disappear with it.
pub fn sub_subdivision(g: &Graph, w: &OneSubdivision, drop_edges: &[usize], drop_vertices: &[usize]) -> OneSubdivision {
    let dropped_b: Vec<usize> = drop_vertices.iter().map(|&i| w.b[i]).collect();
    let mut keep_a = Vec::new();
    for (i, &x) in w.a.iter().enumerate() {
        if drop_edges.contains(&i) {
            continue;
        }
        let touches_dropped = g
            .neighbors(x)
            .iter()
            .any(|&y| dropped_b.contains(&y) && contains_sorted(&w.b, y));
        if !touches_dropped {
            keep_a.push(x);
        }
    }
    let keep_b: Vec<usize> = w
        .b
        .iter()
        .enumerate()
        .filter(|(i, _)| !drop_vertices.contains(i))
        .map(|(_, &y)| y)
        .collect();
    OneSubdivision::new(keep_a, keep_b, w.uniformity)
}

/// Whole-graph scan for a 1-subdivision structure of the given uniformity:
/// per bipartite component, a side whose vertices all have degree exactly
/// `s` can serve as the edge-vertex side. Components that do not fit are
/// skipped; trivial (edgeless) components are ignored.
pub fn detect_one_subdivision(g: &Graph, s: usize) -> Option<OneSubdivision> {
    let mut a = Vec::new();
    let mut b = Vec::new();
    for comp in g.components() {
        let m = g.edges_within(&comp);
        if m == 0 {
            continue;
        }
        // 2-color this component
        let mut color = std::collections::BTreeMap::new();
        color.insert(comp[0], 0u8);
        let mut queue = std::collections::VecDeque::from([comp[0]]);
        let mut bipartite = true;
        while let Some(u) = queue.pop_front() {
            let cu = color[&u];
            for &v in g.neighbors(u) {
                match color.get(&v) {
                    None => {
                        color.insert(v, 1 - cu);
                        queue.push_back(v);
                    }
                    Some(&cv) if cv == cu => {
                        bipartite = false;
                    }
                    _ => {}
                }
            }
            if !bipartite {
                break;
            }
        }
        if !bipartite {
            continue;
        }
        let side0: Vec<usize> = comp.iter().copied().filter(|v| color[v] == 0).collect();
        let side1: Vec<usize> = comp.iter().copied().filter(|v| color[v] == 1).collect();
        let ok0 = side0.iter().all(|&v| g.degree(v) == s);
        let ok1 = side1.iter().all(|&v| g.degree(v) == s);
        let pick = match (ok0, ok1) {
            (true, true) => {
                if side0.len() >= side1.len() {
                    Some((side0, side1))
                } else {
                    Some((side1, side0))
                }
            }
            (true, false) => Some((side0, side1)),
            (false, true) => Some((side1, side0)),
            (false, false) => None,
        };
        if let Some((sa, sb)) = pick {
            a.extend(sa);
            b.extend(sb);
        }
    }
    if a.is_empty() {
        return None;
    }
    let w = OneSubdivision::new(a, b, s);
    w.verify(g).ok().map(|_| w)
}

/// One replacement path of a balanced subdivision: endpoints are indices
/// into the branch list, `inner` the internal host vertices in order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubPath {
    pub ends: (usize, usize),
    pub inner: Vec<usize>,
}

impl SubPath {
    pub fn length(&self) -> usize {
        self.inner.len() + 1
    }
}

/// Balanced subdivision of a clique on `branch.len()` vertices: one path
/// per branch pair, all of one common length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalancedSubdivision {
    pub branch: Vec<usize>,
    pub paths: Vec<SubPath>,
}

impl BalancedSubdivision {
    pub fn path_length(&self) -> Option<usize> {
        self.paths.first().map(|p| p.length())
    }

    pub fn payload_vertices(&self) -> Vec<usize> {
        let mut all = self.branch.clone();
        for p in &self.paths {
            all.extend(p.inner.iter().copied());
        }
        all
    }

    fn expected_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for p in &self.paths {
            let mut prev = self.branch[p.ends.0];
            for &v in &p.inner {
                out.push((prev.min(v), prev.max(v)));
                prev = v;
            }
            let last = self.branch[p.ends.1];
            out.push((prev.min(last), prev.max(last)));
        }
        out.sort_unstable();
        out
    }

    /// Restriction to the first `h` branch vertices: keeps only the paths
    /// between surviving branch pairs. Induced-exactness survives payload
    /// shrinking, so a verified witness stays verified.
    pub fn restrict_to_branch(&self, h: usize) -> BalancedSubdivision {
        let branch: Vec<usize> = self.branch.iter().copied().take(h).collect();
        let paths: Vec<SubPath> = self
            .paths
            .iter()
            .filter(|p| p.ends.0 < h && p.ends.1 < h)
            .cloned()
            .collect();
        BalancedSubdivision { branch, paths }
    }

    /// Relabels every payload vertex through `map` (local id -> host id).
    pub fn mapped(&self, map: &[usize]) -> BalancedSubdivision {
        BalancedSubdivision {
            branch: self.branch.iter().map(|&v| map[v]).collect(),
            paths: self
                .paths
                .iter()
                .map(|p| SubPath { ends: p.ends, inner: p.inner.iter().map(|&v| map[v]).collect() })
                .collect(),
        }
    }

    /// Structural check as a plain subgraph: equal path lengths (>= 1),
    /// full pair coverage, internal disjointness, and all path edges
    /// present in the host. Does not require the copy to be induced.
    pub fn verify_subgraph(&self, g: &Graph) -> Result<(), OpError> {
        let bad = |clause: String| Err(OpError::InvariantViolation { clause });
        let h = self.branch.len();
        for &v in &self.branch {
            if v >= g.n() {
                return Err(OpError::OutOfRange { index: v, n: g.n() });
            }
        }
        {
            let mut sorted = self.branch.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != h {
                return bad("branch vertices repeat".into());
            }
        }
        if self.paths.len() != h * h.saturating_sub(1) / 2 {
            return bad(format!("expected {} paths, found {}", h * h.saturating_sub(1) / 2, self.paths.len()));
        }
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for p in &self.paths {
            let (u, v) = p.ends;
            if u >= h || v >= h || u == v {
                return bad("path endpoints out of branch range".into());
            }
            pairs.push((u.min(v), u.max(v)));
        }
        pairs.sort_unstable();
        pairs.dedup();
        if pairs.len() != self.paths.len() {
            return bad("a branch pair is covered twice".into());
        }
        let ell = self.path_length().unwrap_or(0);
        if ell < 1 {
            return bad("empty path list".into());
        }
        if self.paths.iter().any(|p| p.length() != ell) {
            return bad("path lengths differ (not balanced)".into());
        }
        // internal vertices pairwise distinct and disjoint from branch
        let mut internal: Vec<usize> = self.paths.iter().flat_map(|p| p.inner.iter().copied()).collect();
        for &v in &internal {
            if v >= g.n() {
                return Err(OpError::OutOfRange { index: v, n: g.n() });
            }
        }
        let total = internal.len();
        internal.sort_unstable();
        internal.dedup();
        if internal.len() != total {
            return bad("internal vertices repeat across paths".into());
        }
        let mut branch_sorted = self.branch.clone();
        branch_sorted.sort_unstable();
        if internal.iter().any(|&v| contains_sorted(&branch_sorted, v)) {
            return bad("internal vertex collides with a branch vertex".into());
        }
        for (u, v) in self.expected_edges() {
            if !g.has_edge(u, v) {
                return bad(format!("path edge {{{u},{v}}} missing from host"));
            }
        }
        Ok(())
    }

    /// Full witness check: proper (length >= 2), balanced, internally
    /// disjoint, and induced-exact (the host restricted to the payload
    /// carries no edge beyond the subdivision's own).
    pub fn verify_induced(&self, g: &Graph) -> Result<(), OpError> {
        self.verify_subgraph(g)?;
        let ell = self.path_length().unwrap_or(0);
        if ell < 2 {
            return Err(OpError::InvariantViolation { clause: "path of length 1 (not proper)".into() });
        }
        let mut payload = self.payload_vertices();
        payload.sort_unstable();
        let expected = self.expected_edges().len();
        let actual = g.edges_within(&payload);
        if actual != expected {
            return Err(OpError::InvariantViolation {
                clause: format!("induced violation: payload spans {actual} edges, subdivision has {expected}"),
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3_hyper() -> Multihypergraph {
        Multihypergraph { n: 3, uniformity: 2, edges: vec![vec![0, 1], vec![0, 2], vec![1, 2]] }
    }

    #[test]
    fn recover_inverts_build() {
        let h = k3_hyper();
        let (g, w) = build_one_subdivision(&h);
        assert_eq!(g.n(), 6);
        assert_eq!(g.edge_count(), 6); // a 6-cycle
        let back = w.recover_hypergraph(&g).unwrap();
        let mut edges = back.edges.clone();
        for e in &mut edges {
            e.sort_unstable();
        }
        edges.sort();
        assert_eq!(edges, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn recover_handles_single_triple_and_multiedges() {
        let h = Multihypergraph { n: 3, uniformity: 3, edges: vec![vec![0, 1, 2]] };
        let (g, w) = build_one_subdivision(&h);
        let back = w.recover_hypergraph(&g).unwrap();
        assert_eq!(back.edges.len(), 1);
        assert_eq!(back.uniformity, 3);

        let multi = Multihypergraph { n: 2, uniformity: 2, edges: vec![vec![0, 1], vec![0, 1]] };
        let (g2, w2) = build_one_subdivision(&multi);
        let back2 = w2.recover_hypergraph(&g2).unwrap();
        assert_eq!(back2.max_multiplicity(), 2);
        assert!(!back2.is_simple());
    }

    #[test]
    fn sub_subdivision_keeps_invariants() {
        let (g, w) = build_one_subdivision(&k3_hyper());
        let dropped = sub_subdivision(&g, &w, &[0], &[]);
        assert_eq!(dropped.a.len(), 2);
        dropped.verify(&g).unwrap();
        let none = sub_subdivision(&g, &w, &[0, 1, 2], &[]);
        assert!(none.a.is_empty());
        // deleting a base vertex of K4's subdivision leaves K3's
        let k4 = Multihypergraph {
            n: 4,
            uniformity: 2,
            edges: vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]],
        };
        let (g4, w4) = build_one_subdivision(&k4);
        let sub = sub_subdivision(&g4, &w4, &[], &[3]);
        sub.verify(&g4).unwrap();
        assert_eq!(sub.b.len(), 3);
        assert_eq!(sub.a.len(), 3);
        let back = sub.recover_hypergraph(&g4).unwrap();
        assert_eq!(back.edges.len(), 3);
    }

    #[test]
    fn detect_finds_whole_graph_subdivisions() {
        let (g, _) = build_one_subdivision(&k3_hyper());
        let w = detect_one_subdivision(&g, 2).expect("six-cycle is a 1-subdivision of K3");
        assert_eq!(w.a.len(), 3);
        let g5 = crate::gen::one_subdivision_of_clique(5);
        let w5 = detect_one_subdivision(&g5, 2).unwrap();
        assert_eq!(w5.b.len(), 5);
        assert_eq!(w5.a.len(), 10);
        // K4 is not bipartite
        assert!(detect_one_subdivision(&Graph::complete(4), 2).is_none());
    }

    #[test]
    fn balanced_verifier_accepts_and_rejects() {
        // hand-built 1-subdivision of K4, read as a balanced subdivision with l = 2
        let g = crate::gen::one_subdivision_of_clique(4);
        let mut paths = Vec::new();
        let mut ev = 4;
        for i in 0..4 {
            for j in i + 1..4 {
                paths.push(SubPath { ends: (i, j), inner: vec![ev] });
                ev += 1;
            }
        }
        let w = BalancedSubdivision { branch: vec![0, 1, 2, 3], paths };
        w.verify_induced(&g).unwrap();

        // add a chord between two branch vertices: no longer induced
        let mut edges: Vec<(usize, usize)> = g.edges().collect();
        edges.push((0, 1));
        let chorded = Graph::from_edges(g.n(), &edges).unwrap();
        let err = w.verify_induced(&chorded).unwrap_err();
        assert!(format!("{err}").contains("induced"), "{err}");

        // a length-1 path is not proper
        let k4 = Graph::complete(4);
        let direct = BalancedSubdivision {
            branch: vec![0, 1, 2, 3],
            paths: (0..4)
                .flat_map(|i| ((i + 1)..4).map(move |j| SubPath { ends: (i, j), inner: vec![] }))
                .collect(),
        };
        direct.verify_subgraph(&k4).unwrap();
        let err = direct.verify_induced(&k4).unwrap_err();
        assert!(format!("{err}").contains("proper"), "{err}");
    }
}
