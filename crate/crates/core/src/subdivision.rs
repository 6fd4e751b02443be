//! Extraction of induced 1-subdivisions (unbalanced and almost-regular
//! regimes), uniformity reduction, and the lift from a balanced clique
//! subdivision of the base graph to an induced balanced subdivision of
//! the host.

use crate::config::{derive_rng, RunConfig};
use crate::detect::{greedy_clique, max_clique};
use crate::error::OpError;
use crate::graph::{intersect_sorted, BipartitePartition, Graph, Rational};
use crate::hypergraph::{BalancedSubdivision, OneSubdivision, SubPath};
use num_rational::Ratio;
use num_traits::ToPrimitive;
use rand::Rng;

const SALT_DROP: u64 = 0x64726f70;
const SALT_UNBAL: u64 = 0x756e62;
const SALT_CLEAN: u64 = 0x636c65616e;
const SALT_EXTRACT: u64 = 0x65787472;

/// Reduces an `s`-uniform subdivision witness to a 2-uniform one over a
/// simple base graph: strip multiplicities, keep a random partite
/// subhypergraph, restrict to the densest vertex set, and project onto
/// the best pair of parts. Rejects hosts whose witness carries an edge of
/// multiplicity `>= t` (those contain a K_{s,t}).
pub fn drop_uniformity(
    g: &Graph,
    w: &OneSubdivision,
    s: usize,
    t: usize,
    seed: u64,
    budget: u32,
) -> Result<(OneSubdivision, u32), OpError> {
    if w.uniformity != s {
        return Err(OpError::precondition("drop_uniformity", format!("witness uniformity {} != s = {s}", w.uniformity)));
    }
    let hyper = w.recover_hypergraph(g)?;
    let mult = hyper.max_multiplicity();
    if t >= 1 && mult >= t {
        return Err(OpError::precondition(
            "drop_uniformity",
            format!("edge multiplicity {mult} >= t = {t}: host contains a K_{{s,t}}"),
        ));
    }
    // keep the first edge-vertex per distinct hyperedge
    let mut seen = std::collections::BTreeSet::new();
    let mut simple_positions = Vec::new();
    for (pos, e) in hyper.edges.iter().enumerate() {
        let mut key = e.clone();
        key.sort_unstable();
        if seen.insert(key) {
            simple_positions.push(pos);
        }
    }
    if s == 2 {
        let a: Vec<usize> = simple_positions.iter().map(|&p| w.a[p]).collect();
        let out = OneSubdivision::new(a, w.b.clone(), 2);
        out.verify(g)?;
        return Ok((out, 0));
    }
    let nb = hyper.n;
    let simple_edges: Vec<(usize, Vec<usize>)> = simple_positions
        .iter()
        .map(|&p| (p, hyper.edges[p].clone()))
        .collect();
    let d_simple = Ratio::new((s * simple_edges.len()) as i64, nb.max(1) as i64);
    let partite_floor = d_simple * Ratio::new(factorial_i64(s), (s as i64).pow(s as u32));
    for attempt in 0..budget {
        let mut rng = derive_rng(seed, SALT_DROP, attempt);
        let color: Vec<usize> = (0..nb).map(|_| rng.gen_range(0..s)).collect();
        let partite: Vec<&(usize, Vec<usize>)> = simple_edges
            .iter()
            .filter(|(_, e)| {
                let mut cols: Vec<usize> = e.iter().map(|&v| color[v]).collect();
                cols.sort_unstable();
                cols.dedup();
                cols.len() == s
            })
            .collect();
        if partite.is_empty() {
            continue;
        }
        let d_partite = Ratio::new((s * partite.len()) as i64, nb as i64);
        if d_partite < partite_floor {
            continue;
        }
        // densest restriction by min-degree peeling of the partite hypergraph
        let mut alive_v: Vec<bool> = vec![true; nb];
        let mut alive_e: Vec<bool> = vec![true; partite.len()];
        let mut order: Vec<usize> = Vec::new();
        let mut best: (Rational, usize) = (Ratio::new((s * partite.len()) as i64, nb as i64), 0);
        for step in 0..nb {
            let mut deg = vec![0usize; nb];
            for (ei, (_, e)) in partite.iter().enumerate() {
                if alive_e[ei] {
                    for &v in e.iter() {
                        deg[v] += 1;
                    }
                }
            }
            let v = (0..nb).filter(|&v| alive_v[v]).min_by_key(|&v| (deg[v], v)).unwrap();
            alive_v[v] = false;
            order.push(v);
            for (ei, (_, e)) in partite.iter().enumerate() {
                if alive_e[ei] && e.contains(&v) {
                    alive_e[ei] = false;
                }
            }
            let remaining_v = nb - step - 1;
            let remaining_e = alive_e.iter().filter(|&&x| x).count();
            if remaining_v > 0 {
                let avg = Ratio::new((s * remaining_e) as i64, remaining_v as i64);
                if avg >= best.0 {
                    best = (avg, step + 1);
                }
            }
        }
        let keep: Vec<bool> = {
            let mut k = vec![true; nb];
            for &v in order.iter().take(best.1) {
                k[v] = false;
            }
            k
        };
        let surviving: Vec<&(usize, Vec<usize>)> = partite
            .iter()
            .copied()
            .filter(|(_, e)| e.iter().all(|&v| keep[v]))
            .collect();
        if surviving.is_empty() {
            continue;
        }
        let mut part_sizes = vec![0usize; s];
        for v in 0..nb {
            if keep[v] {
                part_sizes[color[v]] += 1;
            }
        }
        let last = (0..s).max_by_key(|&c| (part_sizes[c], std::cmp::Reverse(c))).unwrap();
        // per other color, count distinct (last-part, that-part) pairs
        let mut best_color: Option<(usize, usize)> = None;
        for c in 0..s {
            if c == last {
                continue;
            }
            let mut pairs = std::collections::BTreeSet::new();
            for (_, e) in surviving.iter() {
                let v = e.iter().copied().find(|&v| color[v] == last).unwrap();
                let u = e.iter().copied().find(|&v| color[v] == c).unwrap();
                pairs.insert((v, u));
            }
            let count = pairs.len();
            if count > 0 && best_color.map(|(_, bc)| count > bc).unwrap_or(true) {
                best_color = Some((c, count));
            }
        }
        let Some((c_star, _)) = best_color else { continue };
        let mut chosen = std::collections::BTreeMap::new(); // (v, u) -> edge position
        for (pos, e) in surviving.iter() {
            let v = e.iter().copied().find(|&v| color[v] == last).unwrap();
            let u = e.iter().copied().find(|&v| color[v] == c_star).unwrap();
            chosen.entry((v, u)).or_insert(*pos);
        }
        let a_new: Vec<usize> = chosen.values().map(|&p| w.a[p]).collect();
        let b_new: Vec<usize> = (0..nb)
            .filter(|&v| keep[v] && (color[v] == last || color[v] == c_star))
            .map(|v| w.b[v])
            .collect();
        let out = OneSubdivision::new(a_new, b_new, 2);
        if out.verify(g).is_ok() {
            if let Ok(base) = out.recover_hypergraph(g) {
                if base.is_simple() && !base.edges.is_empty() {
                    return Ok((out, attempt + 1));
                }
            }
        }
    }
    Err(OpError::BudgetExhausted { op: "drop_uniformity", attempts: budget })
}

fn factorial_i64(k: usize) -> i64 {
    (1..=k as i64).product::<i64>().max(1)
}

fn all_pairs(h: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..h {
        for j in i + 1..h {
            out.push((i, j));
        }
    }
    out
}

fn assemble(branch: Vec<usize>, inner: Vec<((usize, usize), Vec<usize>)>) -> BalancedSubdivision {
    BalancedSubdivision {
        branch,
        paths: inner.into_iter().map(|(ends, inner)| SubPath { ends, inner }).collect(),
    }
}

/// Kuhn-style bipartite matching of branch pairs to distinct middle
/// vertices for the length-2 ladder rung.
fn match_distinct_middles(cands: &[Vec<usize>]) -> Option<Vec<usize>> {
    let mut owner: std::collections::BTreeMap<usize, usize> = std::collections::BTreeMap::new();
    fn augment(
        p: usize,
        cands: &[Vec<usize>],
        owner: &mut std::collections::BTreeMap<usize, usize>,
        visited: &mut std::collections::BTreeSet<usize>,
    ) -> bool {
        for &v in &cands[p] {
            if visited.insert(v) {
                let prev = owner.get(&v).copied();
                match prev {
                    None => {
                        owner.insert(v, p);
                        return true;
                    }
                    Some(q) => {
                        if augment(q, cands, owner, visited) {
                            owner.insert(v, p);
                            return true;
                        }
                    }
                }
            }
        }
        false
    }
    for p in 0..cands.len() {
        let mut visited = std::collections::BTreeSet::new();
        if !augment(p, cands, &mut owner, &mut visited) {
            return None;
        }
    }
    let mut out = vec![usize::MAX; cands.len()];
    for (&v, &p) in owner.iter() {
        out[p] = v;
    }
    Some(out)
}

fn combinations_capped(pool: &[usize], k: usize, cap: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(pool: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, cap: usize) {
        if out.len() >= cap {
            return;
        }
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let need = k - cur.len();
        let mut i = start;
        while i + need <= pool.len() {
            cur.push(pool[i]);
            rec(pool, k, i + 1, cur, out, cap);
            cur.pop();
            if out.len() >= cap {
                return;
            }
            i += 1;
        }
    }
    rec(pool, k, 0, &mut Vec::new(), &mut out, cap);
    out
}

/// Best-effort search for a balanced subdivision of `K_{h_target}` as a
/// plain subgraph: a clique (length 1), then distinct common neighbors
/// (length 2), then exact-length disjoint path routing with backtracking.
/// `NotFound` is an honest miss, not a nonexistence claim.
pub fn find_balanced_clique_subdivision(g: &Graph, h_target: usize, budget: u32) -> Result<BalancedSubdivision, OpError> {
    if h_target < 3 {
        return Err(OpError::precondition("find_balanced_clique_subdivision", format!("h_target {h_target} < 3")));
    }
    // length 1: a clique is its own balanced subdivision
    let mut clique = greedy_clique(g);
    if clique.len() < h_target && g.n() <= 26 {
        clique = max_clique(g);
    }
    if clique.len() >= h_target {
        let branch: Vec<usize> = clique.into_iter().take(h_target).collect();
        let inner = all_pairs(h_target).into_iter().map(|p| (p, Vec::new())).collect();
        let bs = assemble(branch, inner);
        bs.verify_subgraph(g)?;
        return Ok(bs);
    }
    let candidates: Vec<usize> = {
        let mut c: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) >= h_target - 1).collect();
        c.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        c
    };
    if candidates.len() < h_target {
        return Err(OpError::NotFound { op: "find_balanced_clique_subdivision" });
    }
    let pairs = all_pairs(h_target);
    // length 2: one private common neighbor per branch pair
    let combo_cap = (budget as usize).saturating_mul(50).clamp(200, 20_000);
    for combo in combinations_capped(&candidates, h_target, combo_cap) {
        let mut branch_sorted = combo.clone();
        branch_sorted.sort_unstable();
        let cands: Vec<Vec<usize>> = pairs
            .iter()
            .map(|&(i, j)| {
                g.common_neighbors(combo[i], combo[j])
                    .into_iter()
                    .filter(|v| branch_sorted.binary_search(v).is_err())
                    .collect()
            })
            .collect();
        if cands.iter().any(|c| c.is_empty()) {
            continue;
        }
        if let Some(mids) = match_distinct_middles(&cands) {
            let inner = pairs.iter().copied().zip(mids.into_iter().map(|m| vec![m])).collect();
            let bs = assemble(combo, inner);
            bs.verify_subgraph(g)?;
            return Ok(bs);
        }
    }
    // exact-length routing for l = 3..6
    let mut nodes_left: i64 = (budget as i64).saturating_mul(5_000);
    for ell in 3..=6usize {
        for combo in combinations_capped(&candidates, h_target, 500) {
            if nodes_left <= 0 {
                break;
            }
            if let Some(paths) = route_paths(g, &combo, &pairs, ell, &mut nodes_left) {
                let inner = pairs.iter().copied().zip(paths).collect();
                let bs = assemble(combo, inner);
                bs.verify_subgraph(g)?;
                return Ok(bs);
            }
        }
    }
    Err(OpError::NotFound { op: "find_balanced_clique_subdivision" })
}

fn route_paths(
    g: &Graph,
    branch: &[usize],
    pairs: &[(usize, usize)],
    ell: usize,
    nodes_left: &mut i64,
) -> Option<Vec<Vec<usize>>> {
    let mut used = vec![false; g.n()];
    for &b in branch {
        used[b] = true;
    }
    let mut chosen: Vec<Vec<usize>> = vec![Vec::new(); pairs.len()];
    fn extend(
        g: &Graph,
        cur: usize,
        target: usize,
        remaining: usize,
        used: &mut Vec<bool>,
        path: &mut Vec<usize>,
        pairs: &[(usize, usize)],
        branch: &[usize],
        idx: usize,
        chosen: &mut Vec<Vec<usize>>,
        ell: usize,
        nodes_left: &mut i64,
    ) -> bool {
        *nodes_left -= 1;
        if *nodes_left <= 0 {
            return false;
        }
        if remaining == 1 {
            if g.has_edge(cur, target) {
                chosen[idx] = path.clone();
                if route_rec(g, pairs, branch, idx + 1, used, chosen, ell, nodes_left) {
                    return true;
                }
                chosen[idx].clear();
            }
            return false;
        }
        for &next in g.neighbors(cur) {
            if used[next] || next == target {
                continue;
            }
            used[next] = true;
            path.push(next);
            if extend(g, next, target, remaining - 1, used, path, pairs, branch, idx, chosen, ell, nodes_left) {
                return true;
            }
            path.pop();
            used[next] = false;
        }
        false
    }
    fn route_rec(
        g: &Graph,
        pairs: &[(usize, usize)],
        branch: &[usize],
        idx: usize,
        used: &mut Vec<bool>,
        chosen: &mut Vec<Vec<usize>>,
        ell: usize,
        nodes_left: &mut i64,
    ) -> bool {
        if idx == pairs.len() {
            return true;
        }
        let (i, j) = pairs[idx];
        let mut path = Vec::new();
        extend(g, branch[i], branch[j], ell, used, &mut path, pairs, branch, idx, chosen, ell, nodes_left)
    }
    if route_rec(g, pairs, branch, 0, &mut used, &mut chosen, ell, nodes_left) {
        Some(chosen)
    } else {
        None
    }
}

/// Chains uniformity reduction, the balanced-subdivision search on the
/// simple base graph, and the lift through the 1-subdivision (each base
/// edge contributes its edge-vertex, so a base path of length `l` becomes
/// a host path of length `2l`). The result is verified induced, balanced
/// and proper.
pub fn subdivision_reduction(
    g: &Graph,
    w: &OneSubdivision,
    s: usize,
    t: usize,
    h_target: usize,
    seed: u64,
    budget: u32,
) -> Result<(BalancedSubdivision, u32), OpError> {
    let (w2, attempts) = drop_uniformity(g, w, s, t, seed, budget)?;
    let base = w2.recover_hypergraph(g)?;
    if !base.is_simple() {
        return Err(OpError::InvariantViolation { clause: "reduced base graph not simple".into() });
    }
    let base_edges: Vec<(usize, usize)> = base
        .edges
        .iter()
        .map(|e| (e[0].min(e[1]), e[0].max(e[1])))
        .collect();
    let base_graph = Graph::from_edges(base.n, &base_edges)?;
    let bs_base = find_balanced_clique_subdivision(&base_graph, h_target, budget)?;
    // base edge -> host edge-vertex
    let mut edge_vertex = std::collections::BTreeMap::new();
    for (pos, &(x, y)) in base_edges.iter().enumerate() {
        edge_vertex.insert((x, y), w2.a[pos]);
    }
    let lookup = |x: usize, y: usize| -> usize { edge_vertex[&(x.min(y), x.max(y))] };
    let branch: Vec<usize> = bs_base.branch.iter().map(|&v| w2.b[v]).collect();
    let mut paths = Vec::new();
    for p in &bs_base.paths {
        let mut seq = vec![bs_base.branch[p.ends.0]];
        seq.extend(p.inner.iter().copied());
        seq.push(bs_base.branch[p.ends.1]);
        let mut inner = Vec::new();
        for win in seq.windows(2) {
            inner.push(lookup(win[0], win[1]));
            inner.push(w2.b[win[1]]);
        }
        inner.pop(); // the final element is the endpoint branch vertex
        paths.push(SubPath { ends: p.ends, inner });
    }
    let lifted = BalancedSubdivision { branch, paths };
    lifted.verify_induced(g)?;
    Ok((lifted, attempts))
}

/// Degree filter plus greedy coloring: an independent `A' <= A` of size at
/// least `|A| / 40d` in which every vertex sends between `d/20` and `10d`
/// edges into `B`. Deterministic.
pub fn make_regular(g: &Graph, part: &BipartitePartition, d: Rational) -> Result<Vec<usize>, OpError> {
    part.validate(g)?;
    let lo = d / Ratio::from_integer(20);
    let hi = d * Ratio::from_integer(10);
    let filtered: Vec<usize> = part
        .a
        .iter()
        .copied()
        .filter(|&x| {
            let deg = Ratio::from_integer(g.degree_into(x, &part.b) as i64);
            deg >= lo && deg <= hi
        })
        .collect();
    if filtered.is_empty() {
        return Err(OpError::Infeasible { op: "make_regular", clause: "degree filter left nothing".into() });
    }
    let (sub, map) = g.induced(&filtered)?;
    let order = sub.degeneracy().order;
    let mut color = vec![usize::MAX; sub.n()];
    for &v in order.iter().rev() {
        let mut taken: Vec<usize> = sub.neighbors(v).iter().filter_map(|&w| (color[w] != usize::MAX).then_some(color[w])).collect();
        taken.sort_unstable();
        taken.dedup();
        let mut c = 0;
        for t in taken {
            if t == c {
                c += 1;
            } else if t > c {
                break;
            }
        }
        color[v] = c;
    }
    let classes = color.iter().copied().max().unwrap_or(0) + 1;
    let mut best: (usize, usize) = (0, 0); // (class, size)
    for c in 0..classes {
        let size = color.iter().filter(|&&x| x == c).count();
        if size > best.1 {
            best = (c, size);
        }
    }
    let a_prime: Vec<usize> = (0..sub.n()).filter(|&v| color[v] == best.0).map(|v| map[v]).collect();
    debug_assert!(g.is_independent(&a_prime));
    let big_enough = Ratio::from_integer(a_prime.len() as i64) * d * Ratio::from_integer(40)
        >= Ratio::from_integer(part.a.len() as i64);
    if !big_enough {
        return Err(OpError::Infeasible {
            op: "make_regular",
            clause: format!("color class of {} below |A|/40d", a_prime.len()),
        });
    }
    Ok(a_prime)
}

/// Output of the unbalanced extraction, with the numeric side conditions
/// that were checked but not enforced.
#[derive(Debug, Clone)]
pub struct UnbalancedRun {
    pub witness: OneSubdivision,
    pub attempts: u32,
    pub warnings: Vec<String>,
}

/// Unbalanced regime: regularize the big side, sample the small side,
/// and keep the vertices whose sampled trace is exactly an independent
/// left-clean `s`-set. The realized inequality and the final hypergraph
/// degree are both re-verified.
pub fn unbalanced_to_subdivision(
    g: &Graph,
    part: &BipartitePartition,
    d: Rational,
    s: usize,
    k: usize,
    seed: u64,
    budget: u32,
) -> Result<UnbalancedRun, OpError> {
    part.validate(g)?;
    let d_f = d.to_f64().unwrap();
    let e_ab = g.edges_between(&part.a, &part.b);
    if Ratio::from_integer(e_ab as i64) * Ratio::from_integer(10) < d * Ratio::from_integer(part.a.len() as i64) {
        return Err(OpError::precondition(
            "unbalanced_to_subdivision",
            format!("e(A,B) = {e_ab} below d |A| / 10"),
        ));
    }
    if part.a.len() as f64 <= 40.0 * d_f.powi(s as i32 + 2) * part.b.len() as f64 {
        return Err(OpError::precondition(
            "unbalanced_to_subdivision",
            format!("|A| = {} not above 40 d^{{s+2}} |B| = {:.1}", part.a.len(), 40.0 * d_f.powi(s as i32 + 2) * part.b.len() as f64),
        ));
    }
    let mut warnings = Vec::new();
    let side1 = (2.0 * (10 + s) as f64).powi(s as i32);
    if d_f < side1 {
        warnings.push(format!("side condition d >= (2(10+s))^s not met: {d_f:.2} < {side1:.0}"));
    }
    let ramsey_side = crate::sparsify::binom_u128(s + k, s) as f64;
    if d_f / 20.0 <= ramsey_side {
        warnings.push(format!("side condition d/20 > C(s+k, s) not met: {:.2} <= {ramsey_side:.0}", d_f / 20.0));
    }
    let a_prime = make_regular(g, part, d)?;
    let (bsub, bmap) = g.induced(&part.b)?;
    let border = bsub.degeneracy().order;
    let mut pos = std::collections::BTreeMap::new();
    for (i, &v) in border.iter().enumerate() {
        pos.insert(bmap[v], i);
    }
    let p = (1.0 / (2.0 * (10 + s) as f64 * d_f.max(0.01))).clamp(0.0, 1.0);
    for attempt in 0..budget {
        let mut rng = derive_rng(seed, SALT_UNBAL, attempt);
        let b_p: Vec<usize> = part.b.iter().copied().filter(|_| rng.gen_bool(p)).collect();
        if b_p.len() < s.max(1) {
            continue;
        }
        let clean: Vec<usize> = b_p
            .iter()
            .copied()
            .filter(|&b| {
                intersect_sorted(g.neighbors(b), &b_p)
                    .iter()
                    .all(|&w| pos[&w] > pos[&b])
            })
            .collect();
        let a2: Vec<usize> = a_prime
            .iter()
            .copied()
            .filter(|&x| {
                let trace = intersect_sorted(g.neighbors(x), &b_p);
                trace.len() == s && trace.iter().all(|v| clean.binary_search(v).is_ok())
            })
            .collect();
        if (a2.len() as f64) <= d_f * b_p.len() as f64 {
            continue;
        }
        let mut b_used: Vec<usize> = Vec::new();
        for &x in &a2 {
            b_used.extend(intersect_sorted(g.neighbors(x), &b_p));
        }
        b_used.sort_unstable();
        b_used.dedup();
        if b_used.is_empty() {
            continue;
        }
        let witness = OneSubdivision::new(a2, b_used, s);
        if witness.verify(g).is_err() {
            continue;
        }
        if witness.base_average_degree() >= d {
            return Ok(UnbalancedRun { witness, attempts: attempt + 1, warnings });
        }
    }
    Err(OpError::BudgetExhausted { op: "unbalanced_to_subdivision", attempts: budget })
}

/// Almost-regular regime, two Las Vegas stages: (i) cleanup sampling that
/// caps degrees and adjacent codegrees, (ii) trace sampling that leaves an
/// independent exact-`s` incidence structure. Targets come from the
/// configuration; the default target evaluates to about 1 at bench scale.
pub fn almost_regular_to_subdivision(
    g0: &Graph,
    s: usize,
    _t: usize,
    _k: usize,
    seed: u64,
    budget: u32,
    cfg: &RunConfig,
) -> Result<(OneSubdivision, u32), OpError> {
    let d0 = g0.average_degree().to_f64().unwrap();
    if d0 <= 0.0 {
        return Err(OpError::precondition("almost_regular_to_subdivision", "empty graph".to_string()));
    }
    let eps0 = 1.0 / (50_000.0 * (s * s) as f64);
    if (g0.max_degree() as f64) > d0.powf(1.0 + eps0) {
        return Err(OpError::precondition(
            "almost_regular_to_subdivision",
            format!("max degree {} above d^(1+eps0) = {:.2}", g0.max_degree(), d0.powf(1.0 + eps0)),
        ));
    }
    let cleanup_p = cfg.cleanup_p.unwrap_or_else(|| d0.powf(-0.9)).clamp(0.0, 1.0);
    // expected degree after cleanup sampling; equals d0^{1/10} under the
    // default rate and scales correctly under an override
    let d_tenth = d0 * cleanup_p;
    let deg_cap = 1.0 + 10.0 * d_tenth * d0.powf(eps0);
    let codeg_cap = 1.0 + 2.0 * d_tenth * d0.powf(-1.0 / (1000.0 * s as f64));
    let clause_codeg = 3.0 * d_tenth.powf(1.0 - 1.0 / (1000.0 * s as f64));
    let delta = cfg.eta / s as f64;
    let eps = 20.0 * eps0;
    let dh_target = cfg.dh_target.unwrap_or_else(|| d0.powf(1.0 / (40_000.0 * s as f64)));
    for attempt in 0..budget {
        let mut rng = derive_rng(seed, SALT_CLEAN, attempt);
        let w_sample: Vec<usize> = (0..g0.n()).filter(|_| rng.gen_bool(cleanup_p)).collect();
        if w_sample.len() < 2 {
            continue;
        }
        let z_free: Vec<usize> = w_sample
            .iter()
            .copied()
            .filter(|&x| {
                let dw = g0.degree_into(x, &w_sample) as f64;
                if dw > deg_cap {
                    return false;
                }
                intersect_sorted(g0.neighbors(x), &w_sample).iter().all(|&y| {
                    let codeg = crate::graph::intersect_count(
                        &intersect_sorted(g0.neighbors(x), g0.neighbors(y)),
                        &w_sample,
                    ) as f64;
                    codeg <= codeg_cap
                })
            })
            .collect();
        if z_free.len() < 2 {
            continue;
        }
        let (g_clean, map1) = g0.induced(&z_free)?;
        // cleanup clauses, re-verified on the realized sample
        if g_clean.average_degree().to_f64().unwrap() < d_tenth / 10.0 {
            continue;
        }
        if (g_clean.max_degree() as f64) > 11.0 * d_tenth * d0.powf(eps0) {
            continue;
        }
        let codeg_ok = g_clean.edges().all(|(x, y)| (g_clean.codegree(x, y) as f64) <= clause_codeg);
        if !codeg_ok {
            continue;
        }
        let (work, map2) = g_clean.densest_prefix();
        let to_host: Vec<usize> = map2.iter().map(|&v| map1[v]).collect();
        let d_w = work.average_degree().to_f64().unwrap();
        if d_w < 1.05 {
            continue;
        }
        let mut rng2 = derive_rng(seed, SALT_EXTRACT, attempt);
        let p2 = d_w.powf(-1.0 - delta).clamp(0.0, 1.0);
        let b0: Vec<usize> = (0..work.n()).filter(|_| rng2.gen_bool(p2)).collect();
        if b0.is_empty() {
            continue;
        }
        let a0: Vec<usize> = (0..work.n())
            .filter(|&x| work.degree_into(x, &b0) == s)
            .collect();
        let b_iso: Vec<usize> = b0.iter().copied().filter(|&b| work.degree_into(b, &b0) == 0).collect();
        let a_full: Vec<usize> = a0
            .iter()
            .copied()
            .filter(|&x| {
                intersect_sorted(work.neighbors(x), &b0)
                    .iter()
                    .all(|v| b_iso.binary_search(v).is_ok())
            })
            .collect();
        let p_thin = d_w.powf(-(1.0 - cfg.eta + (2 * s + 2) as f64 * eps)).clamp(0.0, 1.0);
        for thin in [false, true] {
            let a1: Vec<usize> = if thin {
                a_full.iter().copied().filter(|_| rng2.gen_bool(p_thin)).collect()
            } else {
                a_full.clone()
            };
            if a1.is_empty() {
                continue;
            }
            // delete one endpoint per edge inside the candidate side
            let mut doomed = std::collections::BTreeSet::new();
            for &x in &a1 {
                if doomed.contains(&x) {
                    continue;
                }
                for &y in intersect_sorted(work.neighbors(x), &a1).iter() {
                    if y != x && !doomed.contains(&y) && !doomed.contains(&x) {
                        let drop = if work.degree(x) >= work.degree(y) { x } else { y };
                        doomed.insert(drop);
                    }
                }
            }
            let a2: Vec<usize> = a1.iter().copied().filter(|x| !doomed.contains(x)).collect();
            if a2.is_empty() {
                continue;
            }
            let mut b_used = Vec::new();
            for &x in &a2 {
                b_used.extend(intersect_sorted(work.neighbors(x), &b0));
            }
            b_used.sort_unstable();
            b_used.dedup();
            if b_used.is_empty() {
                continue;
            }
            let dh = Ratio::new((s * a2.len()) as i64, b_used.len() as i64);
            if dh.to_f64().unwrap() < dh_target {
                continue;
            }
            let witness = OneSubdivision::new(
                a2.iter().map(|&v| to_host[v]).collect(),
                b_used.iter().map(|&v| to_host[v]).collect(),
                s,
            );
            if witness.verify(g0).is_ok() {
                return Ok((witness, attempt + 1));
            }
        }
    }
    Err(OpError::BudgetExhausted { op: "almost_regular_to_subdivision", attempts: budget })
}
