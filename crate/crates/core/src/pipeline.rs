//! Top-level drivers. Each one walks the cleaning/dichotomy/extraction
//! chain, returns a verified witness or an honest failure, and logs every
//! step into a replayable trace. Witnesses can only be constructed
//! through the verifier, so no driver path can hand out an unchecked
//! certificate.

use crate::config::RunConfig;
use crate::detect::{find_induced_kst, find_kss, greedy_clique, induced_pattern_search};
use crate::error::OpError;
use crate::graph::Graph;
use crate::hypergraph::{detect_one_subdivision, BalancedSubdivision, OneSubdivision, SubPath};
use crate::regularize::{dichotomy, DichotomyOutcome};
use crate::shattering::{clean_unbalanced, construct_hk, messy_unbalanced, one_sided_eh, Escape, MessyOutcome};
use crate::sparsify::{dense_or_c4free, too_dense, DenseOrC4Free, TooDenseOutcome};
use crate::subdivision::{subdivision_reduction, unbalanced_to_subdivision};
use crate::trace::RunTrace;
use crate::witness::{VerifiedWitness, Witness};
use num_rational::Ratio;
use num_traits::ToPrimitive;

/// Honest driver failure: the reason for the last dead end. The trace
/// carries the full path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub reason: String,
}

/// Driver result plus its replayable trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DriverRun {
    pub result: Result<VerifiedWitness, Failure>,
    pub trace: RunTrace,
}

impl DriverRun {
    pub fn witness(&self) -> Option<&Witness> {
        self.result.as_ref().ok().map(|v| v.witness())
    }
}

fn fail(trace: RunTrace, reason: impl Into<String>) -> DriverRun {
    DriverRun { result: Err(Failure { reason: reason.into() }), trace }
}

fn emit(g: &Graph, w: Witness, mut trace: RunTrace, label: &str) -> DriverRun {
    match VerifiedWitness::new(g, w) {
        Ok(v) => {
            trace.record("emit", label, 0, format!("verified {}", v.witness().kind_name()));
            DriverRun { result: Ok(v), trace }
        }
        Err(rej) => {
            trace.record("emit", label, 0, format!("rejected: {rej}"));
            fail(trace, format!("witness rejected at emission: {rej}"))
        }
    }
}

fn map_witness(w: Witness, map: &[usize]) -> Witness {
    let f = |v: &usize| map[*v];
    match w {
        Witness::Clique { vertices } => Witness::Clique { vertices: vertices.iter().map(f).collect() },
        Witness::KssSubgraph { left, right } => Witness::KssSubgraph {
            left: left.iter().map(f).collect(),
            right: right.iter().map(f).collect(),
        },
        Witness::InducedKst { small, large } => Witness::InducedKst {
            small: small.iter().map(f).collect(),
            large: large.iter().map(f).collect(),
        },
        Witness::C4FreeDense { vertices, min_avg } => Witness::C4FreeDense {
            vertices: vertices.iter().map(f).collect(),
            min_avg,
        },
        Witness::InducedBalancedSubdivision(b) => Witness::InducedBalancedSubdivision(b.mapped(map)),
        Witness::OneSubdivision(o) => Witness::OneSubdivision(OneSubdivision::new(
            o.a.iter().map(f).collect(),
            o.b.iter().map(f).collect(),
            o.uniformity,
        )),
    }
}

/// A 1-subdivision of a simple 2-uniform base that happens to be complete
/// reads directly as an induced balanced subdivision with paths of
/// length 2.
fn balanced_from_one_subdivision(g: &Graph, w: &OneSubdivision) -> Option<BalancedSubdivision> {
    if w.uniformity != 2 {
        return None;
    }
    let base = w.recover_hypergraph(g).ok()?;
    if !base.is_simple() {
        return None;
    }
    let h = base.n;
    if base.edges.len() != h * h.saturating_sub(1) / 2 {
        return None;
    }
    let paths = w
        .a
        .iter()
        .zip(base.edges.iter())
        .map(|(&av, e)| SubPath { ends: (e[0].min(e[1]), e[0].max(e[1])), inner: vec![av] })
        .collect();
    let bs = BalancedSubdivision { branch: w.b.clone(), paths };
    bs.verify_induced(g).ok()?;
    Some(bs)
}

/// Ladder over target orders: try the largest reachable clique-subdivision
/// order first, then shrink toward `h_lo`.
fn reduce_ladder(
    g: &Graph,
    w: &OneSubdivision,
    s: usize,
    t: usize,
    h_lo: usize,
    h_hi: usize,
    cfg: &RunConfig,
    trace: &mut RunTrace,
) -> Result<BalancedSubdivision, OpError> {
    let mut last = OpError::NotFound { op: "subdivision_reduction" };
    for h in (h_lo..=h_hi.max(h_lo)).rev() {
        match subdivision_reduction(g, w, s, t, h, cfg.seed ^ h as u64, cfg.retry_budget) {
            Ok((bs, attempts)) => {
                trace.record("subdivision_reduction", format!("h={h} s={s} t={t}"), attempts, "balanced subdivision");
                return Ok(bs);
            }
            Err(e) => {
                trace.record("subdivision_reduction", format!("h={h} s={s} t={t}"), 0, format!("{e}"));
                last = e;
            }
        }
    }
    Err(last)
}

/// When uniformity reduction rejects a witness over edge multiplicity, the
/// multiplicity cluster itself is an induced K_{s,t}.
fn kst_from_multiplicity(g: &Graph, w: &OneSubdivision, s: usize, t: usize) -> Option<Witness> {
    let base = w.recover_hypergraph(g).ok()?;
    let mut sorted: Vec<(Vec<usize>, usize)> = base
        .edges
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let mut key = e.clone();
            key.sort_unstable();
            (key, i)
        })
        .collect();
    sorted.sort();
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i + 1;
        while j < sorted.len() && sorted[j].0 == sorted[i].0 {
            j += 1;
        }
        if j - i >= t {
            let small: Vec<usize> = sorted[i].0.iter().map(|&bi| w.b[bi]).take(s).collect();
            let large: Vec<usize> = sorted[i..j].iter().map(|&(_, pos)| w.a[pos]).take(t).collect();
            if small.len() == s && large.len() == t {
                return Some(Witness::InducedKst { small, large });
            }
        }
        i = j;
    }
    None
}

fn c4_free(g: &Graph) -> bool {
    crate::detect::count_c4_capped(g, 100_000_000).map(|c| c == 0).unwrap_or(false)
}

/// C4-free regime: direct subdivision detection, then the heavy/light
/// dichotomy routed into the unbalanced or almost-regular extraction, and
/// the balanced-subdivision lift.
pub fn base_case(g: &Graph, k: usize, cfg: &RunConfig) -> DriverRun {
    let mut trace = RunTrace::new();
    if !c4_free(g) {
        trace.record("base_case", "c4-precondition", 0, "host has a 4-cycle");
        return fail(trace, "precondition: input graph has a 4-cycle");
    }
    trace.record("base_case", format!("n={} k={k}", g.n()), 0, "start");
    let clique = greedy_clique(g);
    if clique.len() >= k {
        trace.record("clique-direct", format!("k={k}"), 0, "greedy clique");
        let vertices: Vec<usize> = clique.into_iter().take(k).collect();
        return emit(g, Witness::Clique { vertices }, trace, "clique-direct");
    }
    // a graph that is globally a 1-subdivision skips the cleaning chain
    if let Some(w) = detect_one_subdivision(g, 2) {
        trace.record("detect_one_subdivision", "s=2", 0, format!("base on {} vertices", w.b.len()));
        let h_hi = cfg.h_target.unwrap_or_else(|| w.b.len().min(8));
        if let Ok(bs) = reduce_ladder(g, &w, 2, 2, 3, h_hi, cfg, &mut trace) {
            return emit(g, Witness::InducedBalancedSubdivision(bs), trace, "direct-subdivision");
        }
    }
    let (core, map1) = g.densest_prefix();
    let d = core.average_degree();
    let d_f = d.to_f64().unwrap();
    trace.record("densest_prefix", format!("n={}", core.n()), 0, format!("avg {d}"));
    let l = cfg.dichotomy_l.unwrap_or(80.0 * d_f.powi(4)).max(2.0);
    match dichotomy(&core, d, l, cfg.seed, cfg.retry_budget, cfg) {
        Ok((DichotomyOutcome::Unbalanced { part, edges_across }, attempts)) => {
            trace.record("dichotomy", format!("L={l:.1}"), attempts, format!("unbalanced, {edges_across} edges across"));
            let mut last = String::new();
            for round in 0..3u64 {
                match unbalanced_to_subdivision(&core, &part, d, 2, k, cfg.seed ^ 0xa1 ^ round, cfg.retry_budget) {
                    Ok(run) => {
                        for warn in &run.warnings {
                            trace.record("unbalanced_to_subdivision", "side-condition", 0, warn.clone());
                        }
                        trace.record("unbalanced_to_subdivision", format!("s=2 k={k}"), run.attempts, "one-subdivision");
                        let h_hi = cfg.h_target.unwrap_or_else(|| run.witness.b.len().min(8));
                        match reduce_ladder(&core, &run.witness, 2, 2, 3, h_hi, cfg, &mut trace) {
                            Ok(bs) => {
                                return emit(
                                    g,
                                    Witness::InducedBalancedSubdivision(bs.mapped(&map1)),
                                    trace,
                                    "unbalanced-subdivision",
                                )
                            }
                            Err(e) => last = format!("reduction failed: {e}"),
                        }
                    }
                    Err(e) => {
                        trace.record("unbalanced_to_subdivision", format!("s=2 k={k}"), 0, format!("{e}"));
                        return fail(trace, format!("unbalanced extraction failed: {e}"));
                    }
                }
            }
            fail(trace, last)
        }
        Ok((DichotomyOutcome::AlmostRegular(cert), attempts)) => {
            trace.record("dichotomy", format!("L={l:.1}"), attempts, format!("almost-regular core of {}", cert.subgraph.len()));
            let (sub, map2) = core.induced(&cert.subgraph).expect("certificate vertices in range");
            let mut last = String::new();
            for round in 0..3u64 {
                match crate::subdivision::almost_regular_to_subdivision(&sub, 2, 2, k, cfg.seed ^ 0xa2 ^ (round << 8), cfg.retry_budget, cfg) {
                    Ok((w, a)) => {
                        trace.record("almost_regular_to_subdivision", "s=2", a, "one-subdivision");
                        let h_hi = cfg.h_target.unwrap_or_else(|| w.b.len().min(8));
                        match reduce_ladder(&sub, &w, 2, 2, 3, h_hi, cfg, &mut trace) {
                            Ok(bs) => {
                                let host_map: Vec<usize> = map2.iter().map(|&v| map1[v]).collect();
                                return emit(
                                    g,
                                    Witness::InducedBalancedSubdivision(bs.mapped(&host_map)),
                                    trace,
                                    "almost-regular-subdivision",
                                );
                            }
                            Err(e) => last = format!("reduction failed: {e}"),
                        }
                    }
                    Err(e) => {
                        trace.record("almost_regular_to_subdivision", "s=2", 0, format!("{e}"));
                        return fail(trace, format!("almost-regular extraction failed: {e}"));
                    }
                }
            }
            fail(trace, last)
        }
        Err(e) => {
            trace.record("dichotomy", format!("L={l:.1}"), 0, format!("{e}"));
            fail(trace, format!("dichotomy failed: {e}"))
        }
    }
}

/// General driver: clique, induced K_{s,t} or induced balanced
/// subdivision. Routes through the dichotomy; the almost-regular side
/// splits into the dense regime (clique / induced biclique) and the
/// C4-free regime (recursive base case).
pub fn main_driver(g: &Graph, s: usize, t: usize, k: usize, cfg: &RunConfig) -> DriverRun {
    assert!(s <= t, "call with s <= t");
    let mut trace = RunTrace::new();
    trace.record("main", format!("n={} s={s} t={t} k={k}", g.n()), 0, "start");
    let clique = greedy_clique(g);
    if clique.len() >= k {
        trace.record("clique-direct", format!("k={k}"), 0, "greedy clique");
        let vertices: Vec<usize> = clique.into_iter().take(k).collect();
        return emit(g, Witness::Clique { vertices }, trace, "clique-direct");
    }
    if let Some(w) = detect_one_subdivision(g, s) {
        trace.record("detect_one_subdivision", format!("s={s}"), 0, format!("base on {} vertices", w.b.len()));
        let h_hi = cfg.h_target.unwrap_or_else(|| w.b.len().min(8));
        if let Ok(bs) = reduce_ladder(g, &w, s, t, 3, h_hi, cfg, &mut trace) {
            return emit(g, Witness::InducedBalancedSubdivision(bs), trace, "direct-subdivision");
        }
        if let Some(kst) = kst_from_multiplicity(g, &w, s, t) {
            trace.record("multiplicity-escape", format!("s={s} t={t}"), 0, "induced biclique from repeated edge");
            return emit(g, kst, trace, "multiplicity-escape");
        }
    }
    let (core, map1) = g.densest_prefix();
    let d = core.average_degree();
    let d_f = d.to_f64().unwrap();
    trace.record("densest_prefix", format!("n={}", core.n()), 0, format!("avg {d}"));
    let l = cfg.dichotomy_l.unwrap_or_else(|| d_f.max(1.0).powi(s as i32 + 3)).max(2.0);
    match dichotomy(&core, d, l, cfg.seed, cfg.retry_budget, cfg) {
        Ok((DichotomyOutcome::Unbalanced { part, edges_across }, attempts)) => {
            trace.record("dichotomy", format!("L={l:.1}"), attempts, format!("unbalanced, {edges_across} edges across"));
            match unbalanced_to_subdivision(&core, &part, d, s, k, cfg.seed ^ 0xb1, cfg.retry_budget) {
                Ok(run) => {
                    for warn in &run.warnings {
                        trace.record("unbalanced_to_subdivision", "side-condition", 0, warn.clone());
                    }
                    trace.record("unbalanced_to_subdivision", format!("s={s} k={k}"), run.attempts, "one-subdivision");
                    let h_hi = cfg.h_target.unwrap_or_else(|| run.witness.b.len().min(8));
                    match reduce_ladder(&core, &run.witness, s, t, 3, h_hi, cfg, &mut trace) {
                        Ok(bs) => {
                            return emit(
                                g,
                                Witness::InducedBalancedSubdivision(bs.mapped(&map1)),
                                trace,
                                "unbalanced-subdivision",
                            )
                        }
                        Err(_) => {
                            if let Some(kst) = kst_from_multiplicity(&core, &run.witness, s, t) {
                                trace.record("multiplicity-escape", format!("s={s} t={t}"), 0, "induced biclique from repeated edge");
                                return emit(g, map_witness(kst, &map1), trace, "multiplicity-escape");
                            }
                            return fail(trace, "unbalanced reduction failed and no multiplicity escape");
                        }
                    }
                }
                Err(e) => {
                    trace.record("unbalanced_to_subdivision", format!("s={s} k={k}"), 0, format!("{e}"));
                    return fail(trace, format!("unbalanced extraction failed: {e}"));
                }
            }
        }
        Ok((DichotomyOutcome::AlmostRegular(cert), attempts)) => {
            trace.record("dichotomy", format!("L={l:.1}"), attempts, format!("almost-regular core of {}", cert.subgraph.len()));
            let host_set: Vec<usize> = cert.subgraph.iter().map(|&v| map1[v]).collect();
            let (sub, map2) = g.induced(&host_set).expect("certificate vertices in range");
            let eps = cfg.eps_dense.unwrap_or(1.0 / (500.0 * s as f64));
            let d_choice = sub
                .average_degree()
                .to_f64()
                .unwrap()
                .min((sub.n() as f64).powf(0.7))
                .max(1.0);
            match dense_or_c4free(&sub, d_choice, eps, cfg.seed ^ 0xb2, cfg.retry_budget, cfg) {
                Ok((DenseOrC4Free::LocallyDense(set), a)) => {
                    trace.record("dense_or_c4free", format!("d={d_choice:.1} eps={eps:.4}"), a, format!("locally dense on {}", set.len()));
                    let host_dense: Vec<usize> = set.iter().map(|&v| map2[v]).collect();
                    let (dense_sub, map3) = g.induced(&host_dense).expect("in range");
                    match too_dense(&dense_sub, s, t, k, cfg.seed ^ 0xb3, cfg.retry_budget, cfg) {
                        Ok((TooDenseOutcome::Clique(c), a2)) => {
                            trace.record("too_dense", format!("s={s} t={t} k={k}"), a2, "clique");
                            let vertices: Vec<usize> = c.iter().map(|&v| map3[v]).collect();
                            return emit(g, Witness::Clique { vertices }, trace, "too-dense-clique");
                        }
                        Ok((TooDenseOutcome::InducedKst { small, large }, a2)) => {
                            trace.record("too_dense", format!("s={s} t={t} k={k}"), a2, "induced biclique");
                            let w = Witness::InducedKst {
                                small: small.iter().map(|&v| map3[v]).collect(),
                                large: large.iter().map(|&v| map3[v]).collect(),
                            };
                            return emit(g, w, trace, "too-dense-kst");
                        }
                        Err(e) => {
                            trace.record("too_dense", format!("s={s} t={t} k={k}"), 0, format!("{e}"));
                            // bench-scale fallback: direct bounded searches
                            if let Some((small, large)) = find_induced_kst(&dense_sub, s, t, cfg.kss_nodes_cap) {
                                trace.record("find_induced_kst", format!("s={s} t={t}"), 0, "found");
                                let w = Witness::InducedKst {
                                    small: small.iter().map(|&v| map3[v]).collect(),
                                    large: large.iter().map(|&v| map3[v]).collect(),
                                };
                                return emit(g, w, trace, "dense-kst-fallback");
                            }
                            let c = greedy_clique(&dense_sub);
                            if c.len() >= k {
                                let vertices: Vec<usize> = c.iter().take(k).map(|&v| map3[v]).collect();
                                return emit(g, Witness::Clique { vertices }, trace, "dense-clique-fallback");
                            }
                            return fail(trace, format!("dense regime exhausted: {e}"));
                        }
                    }
                }
                Ok((DenseOrC4Free::C4Free(set), a)) => {
                    trace.record("dense_or_c4free", format!("d={d_choice:.1} eps={eps:.4}"), a, format!("c4-free on {}", set.len()));
                    let host_set: Vec<usize> = set.iter().map(|&v| map2[v]).collect();
                    let (c4sub, map3) = g.induced(&host_set).expect("in range");
                    let inner = base_case(&c4sub, k, cfg);
                    trace.record("base_case", "c4-free-escape", 0, match &inner.result {
                        Ok(v) => format!("verified {}", v.witness().kind_name()),
                        Err(f) => f.reason.clone(),
                    });
                    trace.merge(inner.trace);
                    match inner.result {
                        Ok(v) => {
                            let w = map_witness(v.into_witness(), &map3);
                            return emit(g, w, trace, "c4-free-escape");
                        }
                        Err(f) => return fail(trace, format!("c4-free escape failed: {}", f.reason)),
                    }
                }
                Err(e) => {
                    trace.record("dense_or_c4free", format!("d={d_choice:.1}"), 0, format!("{e}"));
                    fail(trace, format!("dense-or-c4-free split failed: {e}"))
                }
            }
        }
        Err(e) => {
            trace.record("dichotomy", format!("L={l:.1}"), 0, format!("{e}"));
            fail(trace, format!("dichotomy failed: {e}"))
        }
    }
}

fn balanced_at_least(
    g: &Graph,
    run: DriverRun,
    h: usize,
    mut trace: RunTrace,
    label: &str,
) -> DriverRun {
    trace.merge(run.trace);
    match run.result {
        Ok(v) => match v.into_witness() {
            Witness::InducedBalancedSubdivision(bs) if bs.branch.len() >= h => {
                let trimmed = bs.restrict_to_branch(h);
                emit(g, Witness::InducedBalancedSubdivision(trimmed), trace, label)
            }
            other => fail(trace, format!("escape produced {} below target order {h}", other.kind_name())),
        },
        Err(f) => fail(trace, f.reason),
    }
}

/// Biclique-or-subdivision driver: a K_{s,s} subgraph, or an induced
/// proper balanced subdivision of K_h. Dense escapes try the biclique
/// search first and the one-sided embedding with the 1-subdivision of K_h
/// as the pattern second.
pub fn main1(g: &Graph, h: usize, s: usize, cfg: &RunConfig) -> DriverRun {
    let mut trace = RunTrace::new();
    trace.record("main1", format!("n={} h={h} s={s}", g.n()), 0, "start");
    let pattern = crate::gen::one_subdivision_of_clique(h);
    if h <= cfg.pattern_check_max_h {
        if let Some(w) = detect_one_subdivision(g, 2) {
            if let Ok(bs) = reduce_ladder(g, &w, 2, 2, h, h, cfg, &mut trace) {
                trace.record("pattern-check", format!("h={h}"), 0, "whole-graph subdivision");
                return emit(g, Witness::InducedBalancedSubdivision(bs), trace, "direct-subdivision");
            }
        }
        if let Some(image) = induced_pattern_search(g, &pattern, cfg.pattern_nodes_cap) {
            trace.record("pattern-check", format!("h={h}"), 0, "induced 1-subdivision found");
            let branch: Vec<usize> = image[..h].to_vec();
            let mut paths = Vec::new();
            let mut idx = h;
            for i in 0..h {
                for j in i + 1..h {
                    paths.push(SubPath { ends: (i, j), inner: vec![image[idx]] });
                    idx += 1;
                }
            }
            let bs = BalancedSubdivision { branch, paths };
            return emit(g, Witness::InducedBalancedSubdivision(bs), trace, "pattern-check");
        }
        trace.record("pattern-check", format!("h={h}"), 0, "absent");
    } else {
        trace.record("pattern-check", format!("h={h}"), 0, "skipped: h above cap");
    }
    let (core, map1) = g.densest_prefix();
    let d = core.average_degree();
    let d_f = d.to_f64().unwrap();
    let eps = cfg.eps_dense.unwrap_or(1.0 / (500.0 * h as f64));
    let l = cfg.dichotomy_l.unwrap_or_else(|| d_f.max(1.0).powi(6)).max(2.0);
    trace.record("densest_prefix", format!("n={}", core.n()), 0, format!("avg {d}"));
    let pattern_sides = crate::graph::BipartitePartition::new(
        (0..h).collect(),
        (h..pattern.n()).collect(),
    );
    let dense_escape = |set: Vec<usize>, trace: &mut RunTrace, label: &str| -> Option<Witness> {
        // density escapes first look for the biclique
        let (sub, map) = g.induced(&set).ok()?;
        if let Some((left, right)) = find_kss(&sub, s, cfg.kss_nodes_cap) {
            trace.record("find_kss", format!("s={s}"), 0, format!("{label}: biclique"));
            return Some(Witness::KssSubgraph {
                left: left.iter().map(|&v| map[v]).collect(),
                right: right.iter().map(|&v| map[v]).collect(),
            });
        }
        match one_sided_eh(&sub, &pattern, &pattern_sides, s, cfg.seed ^ 0xc1, cfg.retry_budget, cfg) {
            Ok((image, a)) => {
                trace.record("one_sided_eh", format!("h={h} s={s}"), a, format!("{label}: induced pattern"));
                let branch: Vec<usize> = image[..h].iter().map(|&v| map[v]).collect();
                let mut paths = Vec::new();
                let mut idx = h;
                for i in 0..h {
                    for j in i + 1..h {
                        paths.push(SubPath { ends: (i, j), inner: vec![map[image[idx]]] });
                        idx += 1;
                    }
                }
                Some(Witness::InducedBalancedSubdivision(BalancedSubdivision { branch, paths }))
            }
            Err(e) => {
                trace.record("one_sided_eh", format!("h={h} s={s}"), 0, format!("{label}: {e}"));
                None
            }
        }
    };
    match dichotomy(&core, d, l, cfg.seed, cfg.retry_budget, cfg) {
        Ok((DichotomyOutcome::Unbalanced { part, edges_across }, attempts)) => {
            trace.record("dichotomy", format!("L={l:.1}"), attempts, format!("unbalanced, {edges_across} edges across"));
            match messy_unbalanced(&core, &part.a, &part.b, d, h, 2, 2, eps, cfg.seed ^ 0xc2, cfg.retry_budget, cfg) {
                Ok((MessyOutcome::Clean(ci), a)) => {
                    trace.record("messy_unbalanced", format!("h={h}"), a, format!("clean input of {}", ci.a.len()));
                    match clean_unbalanced(&core, &ci, d, 2, 2, cfg.seed ^ 0xc3, cfg.retry_budget) {
                        Ok((w, a2)) => {
                            trace.record("clean_unbalanced", "D=2 k=2", a2, "one-subdivision");
                            match reduce_ladder(&core, &w, 2, 2, h, h, cfg, &mut trace) {
                                Ok(bs) => {
                                    return emit(
                                        g,
                                        Witness::InducedBalancedSubdivision(bs.mapped(&map1)),
                                        trace,
                                        "unbalanced-subdivision",
                                    )
                                }
                                Err(e) => return fail(trace, format!("reduction failed: {e}")),
                            }
                        }
                        Err(e) => {
                            trace.record("clean_unbalanced", "D=2 k=2", 0, format!("{e}"));
                            return fail(trace, format!("clean extraction failed: {e}"));
                        }
                    }
                }
                Ok((MessyOutcome::Escape(esc), a)) => match esc {
                    Escape::KhkSubdivision(w) => {
                        trace.record("messy_unbalanced", format!("h={h}"), a, "shattering escape");
                        match balanced_from_one_subdivision(&core, &w) {
                            Some(bs) => {
                                return emit(
                                    g,
                                    Witness::InducedBalancedSubdivision(bs.mapped(&map1)),
                                    trace,
                                    "shattering-escape",
                                )
                            }
                            None => return fail(trace, "shattering escape did not lift to a balanced subdivision"),
                        }
                    }
                    Escape::Dense(set) => {
                        trace.record("messy_unbalanced", format!("h={h}"), a, format!("dense escape on {}", set.len()));
                        let host: Vec<usize> = set.iter().map(|&v| map1[v]).collect();
                        match dense_escape(host, &mut trace, "messy-dense") {
                            Some(w) => return emit(g, w, trace, "dense-escape"),
                            None => return fail(trace, "dense escape exhausted"),
                        }
                    }
                    Escape::C4Free(set) => {
                        trace.record("messy_unbalanced", format!("h={h}"), a, format!("c4-free escape on {}", set.len()));
                        let host: Vec<usize> = set.iter().map(|&v| map1[v]).collect();
                        let (sub, map3) = g.induced(&host).expect("in range");
                        let inner = base_case(&sub, h.max(3), cfg);
                        let inner_mapped = DriverRun {
                            result: inner.result.clone().map(|v| {
                                VerifiedWitness::new(g, map_witness(v.into_witness(), &map3)).expect("mapping preserves verification")
                            }),
                            trace: inner.trace,
                        };
                        return balanced_at_least(g, inner_mapped, h, trace, "c4-free-escape");
                    }
                },
                Err(e) => {
                    trace.record("messy_unbalanced", format!("h={h}"), 0, format!("{e}"));
                    return fail(trace, format!("messy unbalanced failed: {e}"));
                }
            }
        }
        Ok((DichotomyOutcome::AlmostRegular(cert), attempts)) => {
            trace.record("dichotomy", format!("L={l:.1}"), attempts, format!("almost-regular core of {}", cert.subgraph.len()));
            let host_set: Vec<usize> = cert.subgraph.iter().map(|&v| map1[v]).collect();
            let (sub, map2) = g.induced(&host_set).expect("in range");
            let d_choice = sub
                .average_degree()
                .to_f64()
                .unwrap()
                .min((sub.n() as f64).powf(0.7))
                .max(1.0);
            match dense_or_c4free(&sub, d_choice, eps, cfg.seed ^ 0xc4, cfg.retry_budget, cfg) {
                Ok((DenseOrC4Free::LocallyDense(set), a)) => {
                    trace.record("dense_or_c4free", format!("d={d_choice:.1}"), a, format!("locally dense on {}", set.len()));
                    let host: Vec<usize> = set.iter().map(|&v| map2[v]).collect();
                    match dense_escape(host, &mut trace, "almost-regular-dense") {
                        Some(w) => emit(g, w, trace, "dense-escape"),
                        None => fail(trace, "dense escape exhausted"),
                    }
                }
                Ok((DenseOrC4Free::C4Free(set), a)) => {
                    trace.record("dense_or_c4free", format!("d={d_choice:.1}"), a, format!("c4-free on {}", set.len()));
                    let host: Vec<usize> = set.iter().map(|&v| map2[v]).collect();
                    let (c4sub, map3) = g.induced(&host).expect("in range");
                    let inner = base_case(&c4sub, h.max(3), cfg);
                    let inner_mapped = DriverRun {
                        result: inner.result.clone().map(|v| {
                            VerifiedWitness::new(g, map_witness(v.into_witness(), &map3)).expect("mapping preserves verification")
                        }),
                        trace: inner.trace,
                    };
                    balanced_at_least(g, inner_mapped, h, trace, "c4-free-escape")
                }
                Err(e) => {
                    trace.record("dense_or_c4free", format!("d={d_choice:.1}"), 0, format!("{e}"));
                    fail(trace, format!("dense-or-c4-free split failed: {e}"))
                }
            }
        }
        Err(e) => {
            trace.record("dichotomy", format!("L={l:.1}"), 0, format!("{e}"));
            fail(trace, format!("dichotomy failed: {e}"))
        }
    }
}

fn recursive_c4free(g: &Graph, k: usize, depth: usize, cfg: &RunConfig, trace: &mut RunTrace) -> Option<Vec<usize>> {
    let all: Vec<usize> = (0..g.n()).collect();
    if c4_free(g) && g.average_degree() >= Ratio::from_integer(k as i64) {
        return Some(all);
    }
    if depth == 0 {
        return None;
    }
    let eps = cfg.eps_dense.unwrap_or(1.0 / (1000.0 * k as f64));
    let d_choice = g.average_degree().to_f64().unwrap().min((g.n() as f64).powf(0.7)).max(1.0);
    match dense_or_c4free(g, d_choice, eps, cfg.seed ^ depth as u64, cfg.retry_budget, cfg) {
        Ok((DenseOrC4Free::C4Free(set), a)) => {
            trace.record("recursive-sparsify", format!("depth={depth}"), a, format!("c4-free on {}", set.len()));
            let (sub, _) = g.induced(&set).ok()?;
            (sub.average_degree() >= Ratio::from_integer(k as i64)).then_some(set)
        }
        Ok((DenseOrC4Free::LocallyDense(set), a)) => {
            trace.record("recursive-sparsify", format!("depth={depth}"), a, format!("recurse into {}", set.len()));
            let (sub, map) = g.induced(&set).ok()?;
            let inner = recursive_c4free(&sub, k, depth - 1, cfg, trace)?;
            Some(inner.into_iter().map(|v| map[v]).collect())
        }
        Err(e) => {
            trace.record("recursive-sparsify", format!("depth={depth}"), 0, format!("{e}"));
            None
        }
    }
}

/// Degree-bounded driver: a K_{s,s} subgraph or a C4-free induced
/// subgraph of average degree at least k. The pattern H_k replaces the
/// clique subdivision as the direct check and the embedding target.
pub fn main2(g: &Graph, k: usize, s: usize, cfg: &RunConfig) -> DriverRun {
    let mut trace = RunTrace::new();
    trace.record("main2", format!("n={} k={k} s={s}", g.n()), 0, "start");
    let d_cap = cfg.uniformity_d;
    let (hk, hk_sides) = construct_hk(k);
    if k <= cfg.pattern_check_max_k && hk.n() <= g.n() {
        if let Some(image) = induced_pattern_search(g, &hk, cfg.pattern_nodes_cap) {
            trace.record("pattern-check", format!("H_{k} on {}", hk.n()), 0, "induced copy found");
            let mut vertices = image;
            vertices.sort_unstable();
            let w = Witness::C4FreeDense { vertices, min_avg: Ratio::from_integer(k as i64) };
            return emit(g, w, trace, "pattern-check");
        }
        trace.record("pattern-check", format!("H_{k} on {}", hk.n()), 0, "absent");
    } else {
        trace.record("pattern-check", format!("H_{k}"), 0, "skipped: k above cap or host too small");
    }
    let (core, map1) = g.densest_prefix();
    let d = core.average_degree();
    let d_f = d.to_f64().unwrap();
    let eps = cfg.eps_dense.unwrap_or(1.0 / (1000.0 * k as f64));
    let l = cfg.dichotomy_l.unwrap_or_else(|| 4.0 * d_f.max(1.0).powi(d_cap as i32 + 3)).max(2.0);
    trace.record("densest_prefix", format!("n={}", core.n()), 0, format!("avg {d}"));
    let dense_escape = |set: Vec<usize>, trace: &mut RunTrace, label: &str| -> Option<Witness> {
        let (sub, map) = g.induced(&set).ok()?;
        if let Some((left, right)) = find_kss(&sub, s, cfg.kss_nodes_cap) {
            trace.record("find_kss", format!("s={s}"), 0, format!("{label}: biclique"));
            return Some(Witness::KssSubgraph {
                left: left.iter().map(|&v| map[v]).collect(),
                right: right.iter().map(|&v| map[v]).collect(),
            });
        }
        match one_sided_eh(&sub, &hk, &hk_sides, s, cfg.seed ^ 0xd1, cfg.retry_budget, cfg) {
            Ok((image, a)) => {
                trace.record("one_sided_eh", format!("H_{k} s={s}"), a, format!("{label}: induced pattern"));
                let mut vertices: Vec<usize> = image.iter().map(|&v| map[v]).collect();
                vertices.sort_unstable();
                Some(Witness::C4FreeDense { vertices, min_avg: Ratio::from_integer(k as i64) })
            }
            Err(e) => {
                trace.record("one_sided_eh", format!("H_{k} s={s}"), 0, format!("{label}: {e}"));
                None
            }
        }
    };
    match dichotomy(&core, d, l, cfg.seed, cfg.retry_budget, cfg) {
        Ok((DichotomyOutcome::Unbalanced { part, edges_across }, attempts)) => {
            trace.record("dichotomy", format!("L={l:.1}"), attempts, format!("unbalanced, {edges_across} edges across"));
            match messy_unbalanced(
                &core,
                &part.a,
                &part.b,
                d,
                8 * k * k,
                2 * k,
                d_cap,
                eps,
                cfg.seed ^ 0xd2,
                cfg.retry_budget,
                cfg,
            ) {
                Ok((MessyOutcome::Clean(ci), a)) => {
                    trace.record("messy_unbalanced", format!("D={d_cap}"), a, format!("clean input of {}", ci.a.len()));
                    match clean_unbalanced(&core, &ci, d, d_cap, 2 * k, cfg.seed ^ 0xd3, cfg.retry_budget) {
                        Ok((w, a2)) => {
                            trace.record("clean_unbalanced", format!("D={d_cap} k={}", 2 * k), a2, "one-subdivision");
                            let mut payload: Vec<usize> = w.a.iter().chain(w.b.iter()).copied().collect();
                            payload.sort_unstable();
                            let (sub, map3) = core.induced(&payload).expect("in range");
                            match recursive_c4free(&sub, k, 3, cfg, &mut trace) {
                                Some(set) => {
                                    let host: Vec<usize> = set.iter().map(|&v| map1[map3[v]]).collect();
                                    let w = Witness::C4FreeDense { vertices: host, min_avg: Ratio::from_integer(k as i64) };
                                    return emit(g, w, trace, "unbalanced-c4free");
                                }
                                None => return fail(trace, "subdivision payload did not sparsify to the target"),
                            }
                        }
                        Err(e) => {
                            trace.record("clean_unbalanced", format!("D={d_cap}"), 0, format!("{e}"));
                            return fail(trace, format!("clean extraction failed: {e}"));
                        }
                    }
                }
                Ok((MessyOutcome::Escape(esc), a)) => match esc {
                    Escape::KhkSubdivision(w) => {
                        trace.record("messy_unbalanced", format!("D={d_cap}"), a, "shattering escape");
                        let mut payload: Vec<usize> = w.a.iter().chain(w.b.iter()).copied().collect();
                        payload.sort_unstable();
                        let host: Vec<usize> = payload.iter().map(|&v| map1[v]).collect();
                        let (sub, map3) = g.induced(&host).expect("in range");
                        match induced_pattern_search(&sub, &hk, cfg.pattern_nodes_cap) {
                            Some(image) => {
                                let mut vertices: Vec<usize> = image.iter().map(|&v| map3[v]).collect();
                                vertices.sort_unstable();
                                let w = Witness::C4FreeDense { vertices, min_avg: Ratio::from_integer(k as i64) };
                                return emit(g, w, trace, "shattering-escape");
                            }
                            None => return fail(trace, "shattering escape did not contain the pattern"),
                        }
                    }
                    Escape::Dense(set) => {
                        trace.record("messy_unbalanced", format!("D={d_cap}"), a, format!("dense escape on {}", set.len()));
                        let host: Vec<usize> = set.iter().map(|&v| map1[v]).collect();
                        match dense_escape(host, &mut trace, "messy-dense") {
                            Some(w) => return emit(g, w, trace, "dense-escape"),
                            None => return fail(trace, "dense escape exhausted"),
                        }
                    }
                    Escape::C4Free(set) => {
                        trace.record("messy_unbalanced", format!("D={d_cap}"), a, format!("c4-free escape on {}", set.len()));
                        let host: Vec<usize> = set.iter().map(|&v| map1[v]).collect();
                        let (sub, _) = g.induced(&host).expect("in range");
                        if sub.average_degree() >= Ratio::from_integer(k as i64) {
                            let w = Witness::C4FreeDense { vertices: host, min_avg: Ratio::from_integer(k as i64) };
                            return emit(g, w, trace, "c4-free-escape");
                        }
                        return fail(trace, "c4-free escape below the degree target");
                    }
                },
                Err(e) => {
                    trace.record("messy_unbalanced", format!("D={d_cap}"), 0, format!("{e}"));
                    return fail(trace, format!("messy unbalanced failed: {e}"));
                }
            }
        }
        Ok((DichotomyOutcome::AlmostRegular(cert), attempts)) => {
            trace.record("dichotomy", format!("L={l:.1}"), attempts, format!("almost-regular core of {}", cert.subgraph.len()));
            let host_set: Vec<usize> = cert.subgraph.iter().map(|&v| map1[v]).collect();
            let (sub, map2) = g.induced(&host_set).expect("in range");
            let d_choice = sub
                .average_degree()
                .to_f64()
                .unwrap()
                .min((sub.n() as f64).powf(0.7))
                .max(1.0);
            match dense_or_c4free(&sub, d_choice, eps, cfg.seed ^ 0xd4, cfg.retry_budget, cfg) {
                Ok((DenseOrC4Free::C4Free(set), a)) => {
                    trace.record("dense_or_c4free", format!("d={d_choice:.1}"), a, format!("c4-free on {}", set.len()));
                    let host: Vec<usize> = set.iter().map(|&v| map2[v]).collect();
                    let (c4sub, _) = g.induced(&host).expect("in range");
                    if c4sub.average_degree() >= Ratio::from_integer(k as i64) {
                        let w = Witness::C4FreeDense { vertices: host, min_avg: Ratio::from_integer(k as i64) };
                        return emit(g, w, trace, "c4-free-escape");
                    }
                    fail(trace, format!("c4-free outcome of degree {} below target {k}", c4sub.average_degree()))
                }
                Ok((DenseOrC4Free::LocallyDense(set), a)) => {
                    trace.record("dense_or_c4free", format!("d={d_choice:.1}"), a, format!("locally dense on {}", set.len()));
                    let host: Vec<usize> = set.iter().map(|&v| map2[v]).collect();
                    match dense_escape(host, &mut trace, "almost-regular-dense") {
                        Some(w) => emit(g, w, trace, "dense-escape"),
                        None => fail(trace, "dense escape exhausted"),
                    }
                }
                Err(e) => {
                    trace.record("dense_or_c4free", format!("d={d_choice:.1}"), 0, format!("{e}"));
                    fail(trace, format!("dense-or-c4-free split failed: {e}"))
                }
            }
        }
        Err(e) => {
            trace.record("dichotomy", format!("L={l:.1}"), 0, format!("{e}"));
            fail(trace, format!("dichotomy failed: {e}"))
        }
    }
}

/// Wrapper for the biclique-number corollary: a direct induced K_{2,t}
/// search, a clique escape for high clique number, then the general
/// driver with s = 2.
pub fn davies(g: &Graph, t: usize, cfg: &RunConfig) -> DriverRun {
    let mut trace = RunTrace::new();
    trace.record("davies", format!("n={} t={t}", g.n()), 0, "start");
    let omega = greedy_clique(g);
    if omega.len() >= t.max(3) {
        trace.record("clique-escape", format!("omega>={}", omega.len()), 0, "clique");
        return emit(g, Witness::Clique { vertices: omega }, trace, "clique-escape");
    }
    if let Some((small, large)) = find_induced_kst(g, 2, t, cfg.kss_nodes_cap) {
        trace.record("find_induced_kst", format!("s=2 t={t}"), 0, "found");
        return emit(g, Witness::InducedKst { small, large }, trace, "direct-kst");
    }
    let inner = main_driver(g, 2, t, omega.len() + 1, cfg);
    trace.merge(inner.trace);
    DriverRun { result: inner.result, trace }
}
