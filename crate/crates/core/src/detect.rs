//! Fast searches: cliques, independent sets, bicliques, induced bicliques,
//! 4-cycle counting and bounded induced-pattern embedding. Exhaustive up to
//! an explicit node cap; the oracles cross-check them on small instances.

use crate::graph::{difference_sorted, intersect_sorted, Graph};

/// Outcome of the recursive Ramsey search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RamseyOutcome {
    Clique(Vec<usize>),
    Independent(Vec<usize>),
    Failure,
}

/// Exact number of 4-cycles via codegree pair counting:
/// `sum over vertex pairs of C(codegree, 2)` counts every 4-cycle twice
/// (once per diagonal). Returns `None` when the wedge work exceeds `cap`.
pub fn count_c4_capped(g: &Graph, cap: u64) -> Option<u64> {
    let work: u64 = (0..g.n()).map(|v| {
        let d = g.degree(v) as u64;
        d * d.saturating_sub(1) / 2
    }).sum();
    if work > cap {
        return None;
    }
    let mut wedges: Vec<u64> = Vec::with_capacity(work as usize);
    let n = g.n() as u64;
    for w in 0..g.n() {
        let nb = g.neighbors(w);
        for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                wedges.push(nb[i] as u64 * n + nb[j] as u64);
            }
        }
    }
    wedges.sort_unstable();
    let mut total = 0u64;
    let mut i = 0;
    while i < wedges.len() {
        let mut j = i + 1;
        while j < wedges.len() && wedges[j] == wedges[i] {
            j += 1;
        }
        let run = (j - i) as u64;
        total += run * (run - 1) / 2;
        i = j;
    }
    Some(total / 2)
}

/// Exact 4-cycle count; panics only if the instance is absurdly dense.
pub fn count_c4(g: &Graph) -> u64 {
    count_c4_capped(g, 200_000_000).expect("4-cycle count: wedge work over cap")
}

/// Number of 4-cycles through the edge {u, v}: choices of x in N(u), y in
/// N(v) with x != y, {x,y} distinct from {u,v}, and xy an edge.
pub fn c4_through_edge(g: &Graph, u: usize, v: usize) -> u64 {
    let mut count = 0u64;
    for &x in g.neighbors(u) {
        if x == v {
            continue;
        }
        for &y in intersect_sorted(g.neighbors(x), g.neighbors(v)).iter() {
            if y != u && y != x {
                count += 1;
            }
        }
    }
    // each 4-cycle u-x-y-v-u is found once as (x, y)
    count
}

/// Exact maximum clique (branch and bound, no budget restriction; meant
/// for moderate sizes).
pub fn max_clique(g: &Graph) -> Vec<usize> {
    fn extend(g: &Graph, current: &mut Vec<usize>, candidates: &[usize], best: &mut Vec<usize>) {
        if current.len() > best.len() {
            *best = current.clone();
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
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut best = Vec::new();
    extend(g, &mut Vec::new(), &order, &mut best);
    best.sort_unstable();
    best
}

/// Greedy clique: grow from each of the top-degree seeds, keep the best.
pub fn greedy_clique(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut best: Vec<usize> = Vec::new();
    for &seed in order.iter().take(24.min(order.len())) {
        let mut clique = vec![seed];
        let mut cands: Vec<usize> = g.neighbors(seed).to_vec();
        while !cands.is_empty() {
            // most neighbors inside the remaining candidate set first
            let &v = cands
                .iter()
                .max_by_key(|&&v| (crate::graph::intersect_count(g.neighbors(v), &cands), std::cmp::Reverse(v)))
                .unwrap();
            clique.push(v);
            cands = intersect_sorted(&cands, g.neighbors(v));
        }
        if clique.len() > best.len() {
            clique.sort_unstable();
            best = clique;
        }
    }
    best
}

/// Turan-style greedy independent set inside `within`: repeatedly take a
/// vertex of minimum degree in the current induced subgraph and discard
/// its closed neighborhood. Deterministic.
pub fn greedy_independent_set(g: &Graph, within: &[usize]) -> Vec<usize> {
    let mut alive: Vec<usize> = within.to_vec();
    alive.sort_unstable();
    alive.dedup();
    let mut out = Vec::new();
    while !alive.is_empty() {
        let &v = alive
            .iter()
            .min_by_key(|&&v| (crate::graph::intersect_count(g.neighbors(v), &alive), v))
            .unwrap();
        out.push(v);
        let mut closed = g.neighbors(v).to_vec();
        closed.push(v);
        closed.sort_unstable();
        alive = difference_sorted(&alive, &closed);
    }
    out.sort_unstable();
    out
}

/// Recursive Ramsey split: returns a k-clique or an independent t-set
/// inside `within`. Guaranteed to succeed when `|within| >= C(k+t, t)`;
/// below that bound it is best-effort and may return `Failure`.
pub fn ramsey_split(g: &Graph, within: &[usize], k: usize, t: usize) -> RamseyOutcome {
    fn rec(g: &Graph, w: &[usize], k: usize, t: usize) -> Option<RamseyOutcome> {
        if k == 0 {
            return Some(RamseyOutcome::Clique(Vec::new()));
        }
        if t == 0 {
            return Some(RamseyOutcome::Independent(Vec::new()));
        }
        if w.is_empty() {
            return None;
        }
        let pivot = w[0];
        let nbrs = intersect_sorted(&w[1..], g.neighbors(pivot));
        let rest = difference_sorted(&w[1..], &nbrs);
        if nbrs.len() >= k - 1 || nbrs.len() >= t {
            if let Some(out) = rec(g, &nbrs, k - 1, t) {
                return Some(match out {
                    RamseyOutcome::Clique(mut c) => {
                        c.push(pivot);
                        c.sort_unstable();
                        RamseyOutcome::Clique(c)
                    }
                    other => other,
                });
            }
        }
        if rest.len() >= k || rest.len() >= t - 1 {
            if let Some(out) = rec(g, &rest, k, t - 1) {
                return Some(match out {
                    RamseyOutcome::Independent(mut i) => {
                        i.push(pivot);
                        i.sort_unstable();
                        RamseyOutcome::Independent(i)
                    }
                    other => other,
                });
            }
        }
        None
    }
    let mut w = within.to_vec();
    w.sort_unstable();
    w.dedup();
    match rec(g, &w, k, t) {
        Some(RamseyOutcome::Clique(c)) => {
            debug_assert!(g.is_clique(&c) && c.len() == k);
            RamseyOutcome::Clique(c)
        }
        Some(RamseyOutcome::Independent(i)) => {
            debug_assert!(g.is_independent(&i) && i.len() == t);
            RamseyOutcome::Independent(i)
        }
        _ => RamseyOutcome::Failure,
    }
}

/// K_{s,s} subgraph search: backtracking over left sides ordered by degree,
/// meeting common neighborhoods with early cutoffs. Exhaustive unless the
/// node cap is hit (then absence is best-effort).
pub fn find_kss(g: &Graph, s: usize, node_cap: u64) -> Option<(Vec<usize>, Vec<usize>)> {
    if s == 0 {
        return Some((Vec::new(), Vec::new()));
    }
    let mut cands: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) >= s).collect();
    cands.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut nodes = 0u64;
    fn rec(
        g: &Graph,
        cands: &[usize],
        start: usize,
        chosen: &mut Vec<usize>,
        common: &[usize],
        s: usize,
        nodes: &mut u64,
        cap: u64,
    ) -> Option<(Vec<usize>, Vec<usize>)> {
        if chosen.len() == s {
            let mut left = chosen.clone();
            left.sort_unstable();
            let right: Vec<usize> = difference_sorted(common, &left).into_iter().take(s).collect();
            if right.len() == s {
                return Some((left, right));
            }
            return None;
        }
        for i in start..cands.len() {
            if chosen.len() + (cands.len() - i) < s {
                return None;
            }
            *nodes += 1;
            if *nodes > cap {
                return None;
            }
            let v = cands[i];
            let next_common = if chosen.is_empty() {
                g.neighbors(v).to_vec()
            } else {
                intersect_sorted(common, g.neighbors(v))
            };
            if next_common.len() >= s {
                chosen.push(v);
                if let Some(hit) = rec(g, cands, i + 1, chosen, &next_common, s, nodes, cap) {
                    return Some(hit);
                }
                chosen.pop();
            }
        }
        None
    }
    let out = rec(g, &cands, 0, &mut Vec::new(), &[], s, &mut nodes, node_cap);
    if let Some((l, r)) = &out {
        debug_assert!(l.iter().all(|&u| r.iter().all(|&v| g.has_edge(u, v))));
    }
    out
}

/// Induced K_{s,t} search: independent s-sets met with independent t-sets
/// inside their common neighborhood.
pub fn find_induced_kst(g: &Graph, s: usize, t: usize, node_cap: u64) -> Option<(Vec<usize>, Vec<usize>)> {
    assert!(s <= t, "call with s <= t");
    let verts: Vec<usize> = (0..g.n()).collect();
    let mut nodes = 0u64;
    fn pick_small(
        g: &Graph,
        verts: &[usize],
        start: usize,
        small: &mut Vec<usize>,
        common: &[usize],
        s: usize,
        t: usize,
        nodes: &mut u64,
        cap: u64,
    ) -> Option<(Vec<usize>, Vec<usize>)> {
        if small.len() == s {
            return pick_large(g, common, t, nodes, cap).map(|l| (small.clone(), l));
        }
        for i in start..verts.len() {
            *nodes += 1;
            if *nodes > cap {
                return None;
            }
            let v = verts[i];
            if small.iter().any(|&u| g.has_edge(u, v)) {
                continue;
            }
            let next_common = if small.is_empty() {
                g.neighbors(v).to_vec()
            } else {
                intersect_sorted(common, g.neighbors(v))
            };
            if next_common.len() >= t {
                small.push(v);
                if let Some(hit) = pick_small(g, verts, i + 1, small, &next_common, s, t, nodes, cap) {
                    return Some(hit);
                }
                small.pop();
            }
        }
        None
    }
    fn pick_large(g: &Graph, pool: &[usize], t: usize, nodes: &mut u64, cap: u64) -> Option<Vec<usize>> {
        fn rec(g: &Graph, pool: &[usize], start: usize, cur: &mut Vec<usize>, t: usize, nodes: &mut u64, cap: u64) -> Option<Vec<usize>> {
            if cur.len() == t {
                return Some(cur.clone());
            }
            for i in start..pool.len() {
                if cur.len() + (pool.len() - i) < t {
                    return None;
                }
                *nodes += 1;
                if *nodes > cap {
                    return None;
                }
                let v = pool[i];
                if cur.iter().any(|&u| g.has_edge(u, v)) {
                    continue;
                }
                cur.push(v);
                if let Some(hit) = rec(g, pool, i + 1, cur, t, nodes, cap) {
                    return Some(hit);
                }
                cur.pop();
            }
            None
        }
        rec(g, pool, 0, &mut Vec::new(), t, nodes, cap)
    }
    let out = pick_small(g, &verts, 0, &mut Vec::new(), &[], s, t, &mut nodes, node_cap);
    if let Some((small, large)) = &out {
        debug_assert!(g.is_independent(small) && g.is_independent(large));
    }
    out
}

/// Fast independent-set counter (include/exclude recursion); parity
/// partner of the enumerate-and-test oracle.
pub fn count_independent_sets(g: &Graph, s: usize, within: &[usize]) -> u64 {
    let mut pool = within.to_vec();
    pool.sort_unstable();
    pool.dedup();
    fn rec(g: &Graph, pool: &[usize], idx: usize, chosen: &mut Vec<usize>, s: usize) -> u64 {
        if chosen.len() == s {
            return 1;
        }
        if pool.len() - idx < s - chosen.len() {
            return 0;
        }
        let v = pool[idx];
        let mut total = rec(g, pool, idx + 1, chosen, s); // exclude v
        if chosen.iter().all(|&u| !g.has_edge(u, v)) {
            chosen.push(v);
            total += rec(g, pool, idx + 1, chosen, s);
            chosen.pop();
        }
        total
    }
    if s == 0 {
        return 1;
    }
    rec(g, &pool, 0, &mut Vec::new(), s)
}

/// Number of automorphisms of a small pattern (brute force; n <= 8).
pub fn automorphism_count(f: &Graph) -> u64 {
    let n = f.n();
    assert!(n <= 8, "automorphism_count is for small patterns");
    let mut perm: Vec<usize> = (0..n).collect();
    let mut count = 0u64;
    loop {
        let ok = (0..n).all(|u| (u + 1..n).all(|v| f.has_edge(u, v) == f.has_edge(perm[u], perm[v])));
        if ok {
            count += 1;
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    count
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Counts copies of `f` as a subgraph of `g` (unlabeled, i.e. embeddings
/// divided by automorphisms), stopping early once `limit` copies are
/// confirmed. Returns `min(count, limit)`.
pub fn count_subgraph_copies_upto(g: &Graph, f: &Graph, limit: u64) -> u64 {
    if f.n() == 4 && f.edge_count() == 4 && (0..4).all(|v| f.degree(v) == 2) {
        // C4 shortcut: codegree counting
        return count_c4(g).min(limit);
    }
    let aut = automorphism_count(f);
    let emb_limit = limit.saturating_mul(aut);
    let emb = count_embeddings_upto(g, f, emb_limit);
    (emb / aut).min(limit)
}

fn pattern_order(f: &Graph) -> Vec<usize> {
    // BFS from the max-degree vertex so each new vertex is anchored when possible
    let n = f.n();
    if n == 0 {
        return Vec::new();
    }
    let start = (0..n).max_by_key(|&v| (f.degree(v), std::cmp::Reverse(v))).unwrap();
    let mut order = vec![start];
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut i = 0;
    while order.len() < n {
        if i < order.len() {
            let u = order[i];
            for &v in f.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    order.push(v);
                }
            }
            i += 1;
        } else {
            // disconnected pattern: pull in the next unseen vertex
            let v = (0..n).find(|&v| !seen[v]).unwrap();
            seen[v] = true;
            order.push(v);
        }
    }
    order
}

fn count_embeddings_upto(g: &Graph, f: &Graph, limit: u64) -> u64 {
    let order = pattern_order(f);
    let mut image: Vec<usize> = vec![usize::MAX; f.n()];
    let mut used = vec![false; g.n()];
    let mut count = 0u64;
    fn rec(
        g: &Graph,
        f: &Graph,
        order: &[usize],
        depth: usize,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        count: &mut u64,
        limit: u64,
    ) {
        if *count >= limit {
            return;
        }
        if depth == order.len() {
            *count += 1;
            return;
        }
        let p = order[depth];
        let anchor = order[..depth].iter().copied().find(|&q| f.has_edge(p, q));
        let candidates: Vec<usize> = match anchor {
            Some(q) => g.neighbors(image[q]).to_vec(),
            None => (0..g.n()).collect(),
        };
        for v in candidates {
            if used[v] {
                continue;
            }
            // subgraph embedding: pattern edges must be host edges
            if order[..depth]
                .iter()
                .all(|&q| !f.has_edge(p, q) || g.has_edge(v, image[q]))
            {
                image[p] = v;
                used[v] = true;
                rec(g, f, order, depth + 1, image, used, count, limit);
                used[v] = false;
                image[p] = usize::MAX;
                if *count >= limit {
                    return;
                }
            }
        }
    }
    rec(g, f, &order, 0, &mut image, &mut used, &mut count, limit);
    count
}

/// Distinct vertex sets of `g` carrying at least one copy of `f` as a
/// subgraph. `max_sets` guards runaway enumeration.
pub fn copy_vertex_sets(g: &Graph, f: &Graph, max_sets: usize) -> Option<Vec<Vec<usize>>> {
    let order = pattern_order(f);
    let mut image: Vec<usize> = vec![usize::MAX; f.n()];
    let mut used = vec![false; g.n()];
    let mut sets = std::collections::BTreeSet::new();
    fn rec(
        g: &Graph,
        f: &Graph,
        order: &[usize],
        depth: usize,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        sets: &mut std::collections::BTreeSet<Vec<usize>>,
        max_sets: usize,
    ) -> bool {
        if sets.len() > max_sets {
            return false;
        }
        if depth == order.len() {
            let mut set: Vec<usize> = image.clone();
            set.sort_unstable();
            sets.insert(set);
            return true;
        }
        let p = order[depth];
        let anchor = order[..depth].iter().copied().find(|&q| f.has_edge(p, q));
        let candidates: Vec<usize> = match anchor {
            Some(q) => g.neighbors(image[q]).to_vec(),
            None => (0..g.n()).collect(),
        };
        for v in candidates {
            if used[v] {
                continue;
            }
            if order[..depth]
                .iter()
                .all(|&q| !f.has_edge(p, q) || g.has_edge(v, image[q]))
            {
                image[p] = v;
                used[v] = true;
                let ok = rec(g, f, order, depth + 1, image, used, sets, max_sets);
                used[v] = false;
                image[p] = usize::MAX;
                if !ok {
                    return false;
                }
            }
        }
        true
    }
    if rec(g, f, &order, 0, &mut image, &mut used, &mut sets, max_sets) {
        Some(sets.into_iter().collect())
    } else {
        None
    }
}

/// Induced-pattern embedding: finds host vertices realizing `pattern`
/// exactly (edges and non-edges). Returns the image in pattern-vertex
/// order, or `None` if not found within `node_cap` search nodes.
pub fn induced_pattern_search(g: &Graph, pattern: &Graph, node_cap: u64) -> Option<Vec<usize>> {
    if pattern.n() > g.n() {
        return None;
    }
    let order = pattern_order(pattern);
    let mut image: Vec<usize> = vec![usize::MAX; pattern.n()];
    let mut used = vec![false; g.n()];
    let mut nodes = 0u64;
    fn rec(
        g: &Graph,
        f: &Graph,
        order: &[usize],
        depth: usize,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        nodes: &mut u64,
        cap: u64,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let p = order[depth];
        let anchor = order[..depth].iter().copied().find(|&q| f.has_edge(p, q));
        let candidates: Vec<usize> = match anchor {
            Some(q) => g.neighbors(image[q]).to_vec(),
            None => (0..g.n()).collect(),
        };
        for v in candidates {
            *nodes += 1;
            if *nodes > cap {
                return false;
            }
            if used[v] {
                continue;
            }
            if order[..depth]
                .iter()
                .all(|&q| f.has_edge(p, q) == g.has_edge(v, image[q]))
            {
                image[p] = v;
                used[v] = true;
                if rec(g, f, order, depth + 1, image, used, nodes, cap) {
                    return true;
                }
                used[v] = false;
                image[p] = usize::MAX;
            }
        }
        false
    }
    if rec(g, pattern, &order, 0, &mut image, &mut used, &mut nodes, node_cap) {
        Some(image)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::oracle::*;

    #[test]
    fn ramsey_split_examples() {
        let k5 = Graph::complete(5);
        let all: Vec<usize> = (0..5).collect();
        match ramsey_split(&k5, &all, 3, 3) {
            RamseyOutcome::Clique(c) => assert_eq!(c.len(), 3),
            other => panic!("expected clique, got {other:?}"),
        }
        let e6 = Graph::empty(6);
        let all6: Vec<usize> = (0..6).collect();
        match ramsey_split(&e6, &all6, 3, 3) {
            RamseyOutcome::Independent(i) => assert_eq!(i.len(), 3),
            other => panic!("expected independent set, got {other:?}"),
        }
        let c5 = Graph::cycle(5);
        let all5: Vec<usize> = (0..5).collect();
        assert_eq!(ramsey_split(&c5, &all5, 3, 3), RamseyOutcome::Failure);
    }

    #[test]
    fn ramsey_split_never_fails_above_bound() {
        fn binom(a: usize, b: usize) -> usize {
            let mut r = 1usize;
            for i in 0..b {
                r = r * (a - i) / (i + 1);
            }
            r
        }
        for seed in 0..60u64 {
            let n = 10 + (seed as usize % 31);
            let g = gen::gnp(n, 0.1 + (seed % 9) as f64 / 10.0, seed);
            for k in 2..=4usize {
                for t in 2..=4usize {
                    if n >= binom(k + t, t) {
                        let all: Vec<usize> = (0..n).collect();
                        let out = ramsey_split(&g, &all, k, t);
                        assert!(out != RamseyOutcome::Failure, "seed {seed} k {k} t {t}");
                    }
                }
            }
        }
    }

    #[test]
    fn kss_examples() {
        // K_{3,3} plus isolated vertex
        let mut edges = Vec::new();
        for u in 0..3 {
            for v in 3..6 {
                edges.push((u, v));
            }
        }
        let g = Graph::from_edges(7, &edges).unwrap();
        assert!(find_kss(&g, 3, 1 << 20).is_some());
        assert!(find_kss(&gen::petersen(), 2, 1 << 20).is_none());
        let dense = gen::gnp(50, 0.9, 11);
        let (l, r) = find_kss(&dense, 4, 1 << 22).expect("dense instance has K_{4,4}");
        assert!(l.iter().all(|&u| r.iter().all(|&v| dense.has_edge(u, v))));
    }

    #[test]
    fn induced_kst_examples() {
        let c4 = Graph::cycle(4);
        assert!(find_induced_kst(&c4, 2, 2, 1 << 20).is_some());
        let k4 = Graph::complete(4);
        assert!(find_induced_kst(&k4, 2, 2, 1 << 20).is_none());
        let star = Graph::complete_bipartite(1, 5);
        assert!(find_induced_kst(&star, 1, 3, 1 << 20).is_some());
    }

    #[test]
    fn c4_count_matches_oracle_small() {
        let b = OracleBudget::default();
        for seed in 0..40u64 {
            let g = gen::gnp(12, 0.1 + (seed % 9) as f64 / 10.0, seed);
            assert_eq!(count_c4(&g), oracle_count_c4(&g, b).unwrap(), "seed {seed}");
        }
    }

    #[test]
    fn c4_through_edge_on_k_3030() {
        let g = Graph::complete_bipartite(30, 30);
        // every cross edge lies in 29 * 29 four-cycles
        assert_eq!(c4_through_edge(&g, 0, 30), 29 * 29);
    }

    #[test]
    fn copy_counting_matches_known_values() {
        let c4 = Graph::cycle(4);
        assert_eq!(count_subgraph_copies_upto(&Graph::complete(6), &c4, 1 << 30), 45);
        assert_eq!(count_subgraph_copies_upto(&gen::petersen(), &c4, 1 << 30), 0);
        let k3 = Graph::complete(3);
        assert_eq!(count_subgraph_copies_upto(&Graph::complete(5), &k3, 1 << 30), 10);
    }

    #[test]
    fn pattern_search_finds_induced_copies() {
        let host = gen::clique_blowup_of_cycles(3, 6);
        let c6 = Graph::cycle(6);
        let img = induced_pattern_search(&host, &c6, 1 << 22).expect("part cycle is induced");
        for i in 0..6 {
            for j in i + 1..6 {
                assert_eq!(c6.has_edge(i, j), host.has_edge(img[i], img[j]));
            }
        }
        // K4 has no induced C4
        assert!(induced_pattern_search(&Graph::complete(4), &Graph::cycle(4), 1 << 20).is_none());
    }

    #[test]
    fn greedy_searches() {
        assert_eq!(greedy_clique(&Graph::complete(50)).len(), 50);
        let ind = greedy_independent_set(&Graph::empty(25), &(0..25).collect::<Vec<_>>());
        assert_eq!(ind.len(), 25);
        let c5 = Graph::cycle(5);
        let ind5 = greedy_independent_set(&c5, &(0..5).collect::<Vec<_>>());
        assert_eq!(ind5.len(), 2);
    }

    #[test]
    fn max_clique_matches_oracle() {
        let b = OracleBudget::default();
        for seed in 0..30u64 {
            let g = gen::gnp(12, 0.2 + (seed % 7) as f64 / 10.0, seed + 100);
            assert_eq!(
                max_clique(&g).len(),
                oracle_max_clique(&g, b).unwrap().len(),
                "seed {seed}"
            );
        }
    }
}
