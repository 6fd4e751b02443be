//! Undirected simple graphs over dense vertex ids `0..n`, plus the peeling
//! machinery (degeneracy orderings, densest peeling suffix) everything else
//! builds on.
//!
//! Adjacency lists are kept sorted so neighborhood intersections run in
//! linear time and all derived quantities are exact (average degrees are
//! rationals, never floats).

use crate::error::OpError;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

/// Exact rational, used for every average-degree quantity.
pub type Rational = Ratio<i64>;

pub fn rational(num: i64, den: i64) -> Rational {
    Ratio::new(num, den)
}

/// Undirected simple graph: symmetric adjacency, no loops, no multi-edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    /// Builds a graph from an edge list. Duplicate pairs and reversed
    /// duplicates collapse to a single edge; self-loops are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, OpError> {
        let mut adj = vec![Vec::new(); n];
        let mut norm: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n {
                return Err(OpError::OutOfRange { index: u, n });
            }
            if v >= n {
                return Err(OpError::OutOfRange { index: v, n });
            }
            if u == v {
                return Err(OpError::InvariantViolation { clause: format!("self-loop at {u}") });
            }
            norm.push((u.min(v), u.max(v)));
        }
        norm.sort_unstable();
        norm.dedup();
        for &(u, v) in &norm {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { adj, m: norm.len() })
    }

    pub fn complete(n: usize) -> Self {
        let mut adj = vec![Vec::new(); n];
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    adj[u].push(v);
                }
            }
        }
        Graph { adj, m: n * n.saturating_sub(1) / 2 }
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    /// Complete bipartite graph; left side is `0..a`, right side `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut edges = Vec::with_capacity(a * b);
        for u in 0..a {
            for v in 0..b {
                edges.push((u, a + v));
            }
        }
        Graph::from_edges(a + b, &edges).unwrap()
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|l| l.len()).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(|l| l.len()).min().unwrap_or(0)
    }

    /// Average degree `2|E|/n`, exactly; `0` for the vertexless graph.
    pub fn average_degree(&self) -> Rational {
        if self.n() == 0 {
            return Rational::from_integer(0);
        }
        Ratio::new(2 * self.m as i64, self.n() as i64)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Sorted intersection of the two neighbor lists (excludes `u`/`v`
    /// themselves since loops do not exist).
    pub fn common_neighbors(&self, u: usize, v: usize) -> Vec<usize> {
        intersect_sorted(&self.adj[u], &self.adj[v])
    }

    pub fn codegree(&self, u: usize, v: usize) -> usize {
        intersect_count(&self.adj[u], &self.adj[v])
    }

    /// Number of neighbors of `u` inside the sorted slice `set`.
    pub fn degree_into(&self, u: usize, set: &[usize]) -> usize {
        intersect_count(&self.adj[u], set)
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        for (i, &u) in set.iter().enumerate() {
            for &v in &set[i + 1..] {
                if self.has_edge(u, v) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_clique(&self, set: &[usize]) -> bool {
        for (i, &u) in set.iter().enumerate() {
            for &v in &set[i + 1..] {
                if u != v && !self.has_edge(u, v) {
                    return false;
                }
            }
        }
        true
    }

    /// Edge count of the subgraph induced on the sorted slice `set`.
    pub fn edges_within(&self, set: &[usize]) -> usize {
        let mut total = 0;
        for &u in set {
            total += intersect_count(&self.adj[u], set);
        }
        total / 2
    }

    /// Edges with one endpoint in each sorted slice (assumed disjoint).
    pub fn edges_between(&self, a: &[usize], b: &[usize]) -> usize {
        let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
        small.iter().map(|&u| intersect_count(&self.adj[u], large)).sum()
    }

    /// Induced subgraph on `verts` (deduplicated), relabeled to `0..k`.
    /// Returns the subgraph together with the map new id -> old id.
    pub fn induced(&self, verts: &[usize]) -> Result<(Graph, Vec<usize>), OpError> {
        let mut set = verts.to_vec();
        set.sort_unstable();
        set.dedup();
        for &v in &set {
            if v >= self.n() {
                return Err(OpError::OutOfRange { index: v, n: self.n() });
            }
        }
        let mut adj = vec![Vec::new(); set.len()];
        let mut m = 0;
        for (new, &old) in set.iter().enumerate() {
            for &w in intersect_sorted(&self.adj[old], &set).iter() {
                let idx = set.binary_search(&w).unwrap();
                adj[new].push(idx);
                if idx > new {
                    m += 1;
                }
            }
        }
        Ok((Graph { adj, m }, set))
    }

    /// Connected components as sorted vertex lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut queue = vec![s];
            while let Some(u) = queue.pop() {
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Proper 2-coloring if the graph is bipartite, else `None`.
    pub fn two_coloring(&self) -> Option<Vec<u8>> {
        let n = self.n();
        let mut color = vec![u8::MAX; n];
        for s in 0..n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if color[v] == u8::MAX {
                        color[v] = 1 - color[u];
                        queue.push_back(v);
                    } else if color[v] == color[u] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    /// Min-degree peeling. Returns the removal order together with the
    /// degeneracy (the maximum degree a vertex has at its removal time).
    pub fn degeneracy(&self) -> DegeneracyOrdering {
        let n = self.n();
        let mut deg: Vec<usize> = (0..n).map(|v| self.degree(v)).collect();
        let maxd = deg.iter().copied().max().unwrap_or(0);
        let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); maxd + 1];
        for v in (0..n).rev() {
            buckets[deg[v]].push(v);
        }
        let mut removed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut degeneracy = 0;
        let mut cur = 0usize;
        while order.len() < n {
            // lazy deletion: entries may be stale
            loop {
                match buckets[cur].last().copied() {
                    Some(v) if removed[v] || deg[v] != cur => {
                        buckets[cur].pop();
                    }
                    Some(_) => break,
                    None => cur += 1,
                }
            }
            let v = buckets[cur].pop().unwrap();
            removed[v] = true;
            degeneracy = degeneracy.max(cur);
            order.push(v);
            for &w in &self.adj[v] {
                if !removed[w] {
                    deg[w] -= 1;
                    buckets[deg[w]].push(w);
                }
            }
            cur = cur.saturating_sub(1);
        }
        DegeneracyOrdering { order, degeneracy }
    }

    /// Among the peeling suffixes, the induced subgraph of maximum average
    /// degree (smallest such suffix on ties). The output has minimum degree
    /// at least half its own average degree.
    pub fn densest_prefix(&self) -> (Graph, Vec<usize>) {
        let n = self.n();
        if n == 0 {
            return (Graph::empty(0), Vec::new());
        }
        let ordering = self.degeneracy();
        // Walk the removal order backwards, re-adding vertices; track edge
        // counts of each suffix.
        let mut present = vec![false; n];
        let mut edges_here = 0usize;
        let mut best: (Rational, usize) = (Rational::from_integer(-1), 0); // (avg, suffix size)
        let mut suffix_edges = vec![0usize; n + 1];
        for (idx, &v) in ordering.order.iter().rev().enumerate() {
            edges_here += self.adj[v].iter().filter(|&&w| present[w]).count();
            present[v] = true;
            let size = idx + 1;
            suffix_edges[size] = edges_here;
            let avg = Ratio::new(2 * edges_here as i64, size as i64);
            // strict improvement keeps the smallest suffix on ties
            if avg > best.0 {
                best = (avg, size);
            }
        }
        let size = best.1;
        let mut verts: Vec<usize> = ordering.order[n - size..].to_vec();
        verts.sort_unstable();
        let (sub, map) = self.induced(&verts).expect("suffix vertices are in range");
        (sub, map)
    }
}

/// Witness of `d`-degeneracy: a removal order in which every vertex has at
/// most `degeneracy` neighbors later in the order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegeneracyOrdering {
    pub order: Vec<usize>,
    pub degeneracy: usize,
}

impl DegeneracyOrdering {
    /// Re-checks the ordering against `g`.
    pub fn verify(&self, g: &Graph) -> bool {
        let n = g.n();
        if self.order.len() != n {
            return false;
        }
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in self.order.iter().enumerate() {
            if v >= n || pos[v] != usize::MAX {
                return false;
            }
            pos[v] = i;
        }
        let mut max_later = 0;
        for v in 0..n {
            let later = g.neighbors(v).iter().filter(|&&w| pos[w] > pos[v]).count();
            max_later = max_later.max(later);
        }
        max_later <= self.degeneracy
    }
}

/// Two disjoint vertex sets inside a host graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartitePartition {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl BipartitePartition {
    pub fn new(mut a: Vec<usize>, mut b: Vec<usize>) -> Self {
        a.sort_unstable();
        a.dedup();
        b.sort_unstable();
        b.dedup();
        BipartitePartition { a, b }
    }

    pub fn validate(&self, g: &Graph) -> Result<(), OpError> {
        for &v in self.a.iter().chain(self.b.iter()) {
            if v >= g.n() {
                return Err(OpError::OutOfRange { index: v, n: g.n() });
            }
        }
        if intersect_count(&self.a, &self.b) > 0 {
            return Err(OpError::InvariantViolation { clause: "partition sides intersect".into() });
        }
        Ok(())
    }
}

/// Largest integer `L` with `each member of a's degree <= L |E|/|A|` style
/// check: true iff the bipartite graph between `a` and `b` is
/// `l`-almost-biregular.
pub fn is_almost_biregular(g: &Graph, part: &BipartitePartition, l: f64) -> bool {
    let e = g.edges_between(&part.a, &part.b);
    if e == 0 {
        return true;
    }
    let bound_a = l * e as f64 / part.a.len() as f64;
    let bound_b = l * e as f64 / part.b.len() as f64;
    part.a.iter().all(|&x| g.degree_into(x, &part.b) as f64 <= bound_a)
        && part.b.iter().all(|&y| g.degree_into(y, &part.a) as f64 <= bound_b)
}

pub(crate) fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

pub(crate) fn intersect_count(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

/// Set difference `a \ b` for sorted slices.
pub(crate) fn difference_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j >= b.len() || b[j] != x {
            out.push(x);
        }
    }
    out
}

pub(crate) fn contains_sorted(s: &[usize], x: usize) -> bool {
    s.binary_search(&x).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gnp(n: usize, p: f64, seed: u64) -> Graph {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn average_degree_basics() {
        assert_eq!(Graph::complete(4).average_degree(), rational(3, 1));
        assert_eq!(Graph::empty(5).average_degree(), rational(0, 1));
        assert_eq!(Graph::path(3).average_degree(), rational(4, 3));
    }

    #[test]
    fn degeneracy_basics() {
        assert_eq!(Graph::cycle(5).degeneracy().degeneracy, 2);
        // a path is a tree
        assert_eq!(Graph::path(7).degeneracy().degeneracy, 1);
        assert_eq!(Graph::complete(5).degeneracy().degeneracy, 4);
    }

    #[test]
    fn densest_prefix_peels_pendant() {
        // K5 plus a pendant vertex hanging off vertex 0
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for u in 0..5 {
            for v in u + 1..5 {
                edges.push((u, v));
            }
        }
        edges.push((0, 5));
        let g = Graph::from_edges(6, &edges).unwrap();
        let (sub, map) = g.densest_prefix();
        assert_eq!(sub.n(), 5);
        assert_eq!(sub.average_degree(), rational(4, 1));
        assert_eq!(map, vec![0, 1, 2, 3, 4]);

        let k4 = Graph::complete(4);
        let (sub, _) = k4.densest_prefix();
        assert_eq!(sub.n(), 4);

        let e3 = Graph::empty(3);
        let (sub, _) = e3.densest_prefix();
        assert_eq!(sub.n(), 1);
        assert_eq!(sub.average_degree(), rational(0, 1));
    }

    #[test]
    fn induced_basics() {
        let c5 = Graph::cycle(5);
        let (p, _) = c5.induced(&[0, 1, 2]).unwrap();
        assert_eq!(p.edge_count(), 2); // path on 3 vertices
        let (e, _) = c5.induced(&[]).unwrap();
        assert_eq!(e.n(), 0);
        let (t, _) = Graph::complete(4).induced(&[1, 2, 3]).unwrap();
        assert_eq!(t.edge_count(), 3);
        assert!(c5.induced(&[9]).is_err());
    }

    #[test]
    fn induced_composition_is_stable() {
        let g = gnp(40, 0.3, 5);
        let set: Vec<usize> = (0..40).step_by(3).collect();
        let (sub, map) = g.induced(&set).unwrap();
        let all: Vec<usize> = (0..sub.n()).collect();
        let (sub2, map2) = sub.induced(&all).unwrap();
        assert_eq!(sub, sub2);
        assert_eq!(map2, all);
        assert_eq!(map, set);
    }

    #[test]
    fn peeling_invariants_over_seeded_instances() {
        for seed in 0..1000u64 {
            let n = 5 + (seed as usize * 17) % 196;
            let p = 0.02 + (seed as f64 % 11.0) / 25.0;
            let g = gnp(n, p, seed);
            let ord = g.degeneracy();
            assert!(ord.verify(&g), "ordering re-verification failed at seed {seed}");
            assert!(ord.degeneracy <= g.max_degree());
            let (dense, _) = g.densest_prefix();
            assert!(dense.average_degree() >= g.average_degree());
            let avg = dense.average_degree();
            assert!(
                Rational::from_integer(dense.min_degree() as i64) * 2 >= avg,
                "min degree below half the average at seed {seed}"
            );
        }
    }
}
