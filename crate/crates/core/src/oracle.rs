//! Brute-force reference implementations. Deliberately slow and obviously
//! correct; every fast search elsewhere is validated against these on small
//! instances. All entry points refuse graphs beyond the budget.

use crate::error::OpError;
use crate::graph::Graph;

/// Size cap for the exponential-time oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_vertices: usize,
    pub max_edges: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_vertices: 24, max_edges: 300 }
    }
}

impl OracleBudget {
    pub fn check(&self, g: &Graph) -> Result<(), OpError> {
        if g.n() > self.max_vertices {
            return Err(OpError::OracleBudgetExceeded { n: g.n(), max: self.max_vertices });
        }
        if g.edge_count() > self.max_edges {
            return Err(OpError::OracleBudgetExceeded { n: g.edge_count(), max: self.max_edges });
        }
        Ok(())
    }
}

/// Depth-first k-subset enumeration shared with the fast-path modules.
pub(crate) fn combinations_pub(pool: &[usize], k: usize, f: impl FnMut(&[usize]) -> bool) {
    combinations(pool, k, f)
}

fn combinations(pool: &[usize], k: usize, mut f: impl FnMut(&[usize]) -> bool) {
    // depth-first over k-subsets in lexicographic order; `f` returns true to stop
    fn rec(pool: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        let need = k - cur.len();
        let mut i = start;
        while i + need <= pool.len() {
            cur.push(pool[i]);
            if rec(pool, k, i + 1, cur, f) {
                return true;
            }
            cur.pop();
            i += 1;
        }
        false
    }
    let mut cur = Vec::with_capacity(k);
    rec(pool, k, 0, &mut cur, &mut f);
}

/// Exact number of distinct 4-cycles (as vertex subsets with a cyclic
/// wiring; chords are irrelevant).
pub fn oracle_count_c4(g: &Graph, budget: OracleBudget) -> Result<u64, OpError> {
    budget.check(g)?;
    let verts: Vec<usize> = (0..g.n()).collect();
    let mut count = 0u64;
    combinations(&verts, 4, |q| {
        let [a, b, c, d] = [q[0], q[1], q[2], q[3]];
        // three cyclic orderings of four vertices
        let orders = [[a, b, c, d], [a, b, d, c], [a, c, b, d]];
        for o in orders {
            if g.has_edge(o[0], o[1]) && g.has_edge(o[1], o[2]) && g.has_edge(o[2], o[3]) && g.has_edge(o[3], o[0]) {
                count += 1;
            }
        }
        false
    });
    Ok(count)
}

/// A maximum clique, by branch and bound.
pub fn oracle_max_clique(g: &Graph, budget: OracleBudget) -> Result<Vec<usize>, OpError> {
    budget.check(g)?;
    fn extend(g: &Graph, current: &mut Vec<usize>, candidates: &[usize], best: &mut Vec<usize>) {
        if current.len() > best.len() {
            *best = current.clone();
        }
        if current.len() + candidates.len() <= best.len() {
            return;
        }
        for (i, &v) in candidates.iter().enumerate() {
            if current.len() + (candidates.len() - i) <= best.len() {
                return;
            }
            current.push(v);
            let next: Vec<usize> = candidates[i + 1..].iter().copied().filter(|&w| g.has_edge(v, w)).collect();
            extend(g, current, &next, best);
            current.pop();
        }
    }
    let verts: Vec<usize> = (0..g.n()).collect();
    let mut best = Vec::new();
    let mut cur = Vec::new();
    extend(g, &mut cur, &verts, &mut best);
    Ok(best)
}

/// A `K_{s,s}` subgraph (two disjoint `s`-sets, complete between, edges
/// inside the sides allowed), if one exists.
pub fn oracle_find_kss(g: &Graph, s: usize, budget: OracleBudget) -> Result<Option<(Vec<usize>, Vec<usize>)>, OpError> {
    budget.check(g)?;
    if s == 0 {
        return Ok(Some((Vec::new(), Vec::new())));
    }
    let pool: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) >= s).collect();
    let mut found = None;
    combinations(&pool, s, |left| {
        let mut common: Option<Vec<usize>> = None;
        for &v in left {
            common = Some(match common {
                None => g.neighbors(v).to_vec(),
                Some(c) => crate::graph::intersect_sorted(&c, g.neighbors(v)),
            });
            if common.as_ref().unwrap().len() < s {
                return false;
            }
        }
        let common = common.unwrap();
        let right: Vec<usize> = common.iter().copied().filter(|v| !left.contains(v)).take(s).collect();
        if right.len() == s {
            found = Some((left.to_vec(), right));
            return true;
        }
        false
    });
    Ok(found)
}

/// Exact count of independent `s`-subsets of `within`.
pub fn oracle_independent_sets(g: &Graph, s: usize, within: &[usize], budget: OracleBudget) -> Result<u64, OpError> {
    budget.check(g)?;
    let mut pool = within.to_vec();
    pool.sort_unstable();
    pool.dedup();
    for &v in &pool {
        if v >= g.n() {
            return Err(OpError::OutOfRange { index: v, n: g.n() });
        }
    }
    let mut count = 0u64;
    combinations(&pool, s, |set| {
        if g.is_independent(set) {
            count += 1;
        }
        false
    });
    Ok(count)
}

/// An induced `K_{s,t}` (both sides independent, complete between), if one
/// exists. Exhaustive; parity reference for the fast searcher.
pub fn oracle_find_induced_kst(
    g: &Graph,
    s: usize,
    t: usize,
    budget: OracleBudget,
) -> Result<Option<(Vec<usize>, Vec<usize>)>, OpError> {
    budget.check(g)?;
    let pool: Vec<usize> = (0..g.n()).collect();
    let mut found = None;
    combinations(&pool, s, |small| {
        if !g.is_independent(small) {
            return false;
        }
        let mut common: Option<Vec<usize>> = None;
        for &v in small {
            common = Some(match common {
                None => g.neighbors(v).to_vec(),
                Some(c) => crate::graph::intersect_sorted(&c, g.neighbors(v)),
            });
            if common.as_ref().unwrap().len() < t {
                return false;
            }
        }
        let common = common.unwrap();
        let mut inner = None;
        combinations(&common, t, |large| {
            if g.is_independent(large) {
                inner = Some(large.to_vec());
                return true;
            }
            false
        });
        if let Some(large) = inner {
            found = Some((small.to_vec(), large));
            return true;
        }
        false
    });
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    #[test]
    fn c4_counts() {
        let b = OracleBudget::default();
        assert_eq!(oracle_count_c4(&Graph::cycle(4), b).unwrap(), 1);
        assert_eq!(oracle_count_c4(&Graph::complete(4), b).unwrap(), 3);
        assert_eq!(oracle_count_c4(&gen::petersen(), b).unwrap(), 0);
    }

    #[test]
    fn max_clique_small() {
        let b = OracleBudget::default();
        assert_eq!(oracle_max_clique(&Graph::complete(5), b).unwrap().len(), 5);
        assert_eq!(oracle_max_clique(&Graph::cycle(5), b).unwrap().len(), 2);
        assert_eq!(oracle_max_clique(&gen::petersen(), b).unwrap().len(), 2);
    }

    #[test]
    fn kss_search() {
        let b = OracleBudget::default();
        assert!(oracle_find_kss(&Graph::cycle(4), 2, b).unwrap().is_some());
        let tree = Graph::path(8);
        assert!(oracle_find_kss(&tree, 2, b).unwrap().is_none());
        assert!(oracle_find_kss(&gen::heawood(), 3, b).unwrap().is_none());
        // K_{3,3} plus an isolated vertex
        let mut edges = Vec::new();
        for u in 0..3 {
            for v in 3..6 {
                edges.push((u, v));
            }
        }
        let g = Graph::from_edges(7, &edges).unwrap();
        let (l, r) = oracle_find_kss(&g, 3, b).unwrap().unwrap();
        assert_eq!(l.len(), 3);
        assert_eq!(r.len(), 3);
    }

    #[test]
    fn independent_set_counts() {
        let b = OracleBudget::default();
        let e6 = Graph::empty(6);
        let all: Vec<usize> = (0..6).collect();
        assert_eq!(oracle_independent_sets(&e6, 3, &all, b).unwrap(), 20);
        let k6 = Graph::complete(6);
        assert_eq!(oracle_independent_sets(&k6, 2, &all, b).unwrap(), 0);
        let c5 = Graph::cycle(5);
        let five: Vec<usize> = (0..5).collect();
        assert_eq!(oracle_independent_sets(&c5, 2, &five, b).unwrap(), 5);
    }

    #[test]
    fn budget_is_enforced() {
        let g = Graph::empty(30);
        assert!(matches!(
            oracle_count_c4(&g, OracleBudget::default()),
            Err(OpError::OracleBudgetExceeded { .. })
        ));
    }
}
