//! Degree cleaning: resampling an almost-biregular bipartite graph down to
//! one with max degree tied to its average, bootstrapping that into an
//! almost-regular certificate, and the heavy/light dichotomy that feeds
//! everything downstream.
//!
//! All random steps are Las Vegas: sample, re-verify the exact output
//! contract, resample up to the budget.

use crate::config::{derive_rng, RunConfig};
use crate::error::OpError;
use crate::graph::{BipartitePartition, Graph, Rational};
use num_rational::Ratio;
use num_traits::ToPrimitive;
use rand::Rng;

const SALT_BIREGULAR: u64 = 0x6272656775;
const SALT_BOOTSTRAP: u64 = 0x626f6f74;

/// Certificate that `subgraph` induces a graph whose max degree is within
/// the promised slack of its average degree.
#[derive(Debug, Clone, PartialEq)]
pub struct AlmostRegularCertificate {
    pub subgraph: Vec<usize>,
    pub avg: Rational,
    pub max_deg: usize,
    pub slack: Rational,
}

impl AlmostRegularCertificate {
    pub fn from_set(g: &Graph, set: &[usize]) -> Result<Self, OpError> {
        let (sub, map) = g.induced(set)?;
        let avg = sub.average_degree();
        if avg <= Rational::from_integer(0) {
            return Err(OpError::InvariantViolation { clause: "certificate needs positive average degree".into() });
        }
        let max_deg = sub.max_degree();
        let slack = Ratio::from_integer(max_deg as i64) / avg;
        Ok(AlmostRegularCertificate { subgraph: map, avg, max_deg, slack })
    }

    /// Re-derives all fields from the host graph and compares.
    pub fn verify(&self, g: &Graph) -> Result<(), OpError> {
        let fresh = AlmostRegularCertificate::from_set(g, &self.subgraph)?;
        if fresh != *self {
            return Err(OpError::InvariantViolation { clause: "certificate fields disagree with recomputation".into() });
        }
        Ok(())
    }
}

/// Outcome of the heavy/light dichotomy.
#[derive(Debug, Clone, PartialEq)]
pub enum DichotomyOutcome {
    /// A heavily unbalanced bipartition carrying a constant fraction of
    /// the edges: `|a| >= l |b| / 2` and `edges_across >= n d / 8`.
    Unbalanced { part: BipartitePartition, edges_across: usize },
    /// An induced almost-regular subgraph.
    AlmostRegular(AlmostRegularCertificate),
}

fn bipartite_avg(edges: usize, na: usize, nb: usize) -> Rational {
    if na + nb == 0 {
        return Rational::from_integer(0);
    }
    Ratio::new(2 * edges as i64, (na + nb) as i64)
}

/// Resamples an `l`-almost-biregular bipartite graph down to an induced
/// bipartite subgraph `G'` with `d(G') >= d(G)/4` and
/// `max_deg(G') <= 24 l d(G')`; both inequalities are re-verified before
/// returning. An edgeless input is returned unchanged.
pub fn biregular_to_regular(
    g: &Graph,
    part: &BipartitePartition,
    l: f64,
    seed: u64,
    budget: u32,
) -> Result<(BipartitePartition, u32), OpError> {
    part.validate(g)?;
    let edges = g.edges_between(&part.a, &part.b);
    if edges == 0 {
        return Ok((part.clone(), 0));
    }
    // normalize so the side we threshold is the smaller one
    let (small, large) = if part.a.len() <= part.b.len() { (&part.a, &part.b) } else { (&part.b, &part.a) };
    let d_gamma = bipartite_avg(edges, part.a.len(), part.b.len());
    let p = small.len() as f64 / large.len() as f64;
    for attempt in 0..budget {
        let mut rng = derive_rng(seed, SALT_BIREGULAR, attempt);
        let chosen_large: Vec<usize> = large.iter().copied().filter(|_| rng.gen_bool(p.min(1.0))).collect();
        let mut chosen_small = Vec::new();
        for &x in small {
            let deg = g.degree_into(x, large);
            let into_sample = g.degree_into(x, &chosen_large) as f64;
            if into_sample <= 1.0 + 2.0 * p * (deg.saturating_sub(1)) as f64 {
                chosen_small.push(x);
            }
        }
        let e_new = g.edges_between(&chosen_small, &chosen_large);
        if e_new == 0 {
            continue;
        }
        let d_new = bipartite_avg(e_new, chosen_small.len(), chosen_large.len());
        let max_new = chosen_small
            .iter()
            .map(|&x| g.degree_into(x, &chosen_large))
            .chain(chosen_large.iter().map(|&y| g.degree_into(y, &chosen_small)))
            .max()
            .unwrap_or(0);
        let contract_avg = d_new * 4 >= d_gamma;
        let contract_max = (max_new as f64) <= 24.0 * l * d_new.to_f64().unwrap();
        if contract_avg && contract_max {
            let out = if part.a.len() <= part.b.len() {
                BipartitePartition::new(chosen_small, chosen_large)
            } else {
                BipartitePartition::new(chosen_large, chosen_small)
            };
            return Ok((out, attempt + 1));
        }
    }
    Err(OpError::BudgetExhausted { op: "biregular_to_regular", attempts: budget })
}

/// Extracts an almost-regular induced subgraph: average degree at least
/// `d / (c2 log^2 l)` and max degree at most `c1 avg log^2 l`. The densest
/// peeling suffix is tried first; if it already satisfies the certificate
/// there is nothing to randomize.
pub fn bootstrap_almost_regular(
    g: &Graph,
    d: Rational,
    l: f64,
    seed: u64,
    budget: u32,
    cfg: &RunConfig,
) -> Result<(AlmostRegularCertificate, u32), OpError> {
    let l_eff = l.max(cfg.l_clamp).max(2.0);
    let log_l = l_eff.log2();
    let avg_floor = (d.to_f64().unwrap() / (cfg.bootstrap_c2 * log_l * log_l)).max(0.0);
    let cert_ok = |cert: &AlmostRegularCertificate| {
        let avg = cert.avg.to_f64().unwrap();
        avg > 0.0 && avg >= avg_floor && (cert.max_deg as f64) <= cfg.bootstrap_c1 * avg * log_l * log_l
    };

    // attempt 0: the densest peeling suffix, no randomness
    let (_, dense_map) = g.densest_prefix();
    if !dense_map.is_empty() {
        if let Ok(cert) = AlmostRegularCertificate::from_set(g, &dense_map) {
            if cert_ok(&cert) {
                return Ok((cert, 0));
            }
        }
    }

    let d_f = d.to_f64().unwrap();
    let (work, map) = g.densest_prefix();
    let n_w = work.n();
    let bucket_count = log_l.ceil() as usize + 1;
    let ell = (log_l + log_l.max(2.0).log2() + 7.0).ceil() as usize;
    for attempt in 1..=budget {
        let mut rng = derive_rng(seed, SALT_BOOTSTRAP, attempt);
        // degree buckets [2^{i-2} d, 2^{i-1} d)
        let mut best_bucket: Option<(usize, u64)> = None;
        for i in 1..=bucket_count {
            let lo = 2f64.powi(i as i32 - 2) * d_f;
            let hi = 2f64.powi(i as i32 - 1) * d_f;
            let mass: u64 = (0..n_w)
                .filter(|&v| {
                    let deg = work.degree(v) as f64;
                    deg >= lo && deg < hi
                })
                .map(|v| work.degree(v) as u64)
                .sum();
            if mass > 0 && best_bucket.map(|(_, m)| mass > m).unwrap_or(true) {
                best_bucket = Some((i, mass));
            }
        }
        let Some((bucket_i, _)) = best_bucket else { continue };
        let lo = 2f64.powi(bucket_i as i32 - 2) * d_f;
        let hi = 2f64.powi(bucket_i as i32 - 1) * d_f;
        let v_i: Vec<usize> = (0..n_w)
            .filter(|&v| {
                let deg = work.degree(v) as f64;
                deg >= lo && deg < hi
            })
            .collect();
        // random half, then keep vertices sending half their edges outward
        let f_set: Vec<usize> = v_i.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        let f_prime: Vec<usize> = f_set
            .iter()
            .copied()
            .filter(|&x| {
                let inside = work.degree_into(x, &f_set);
                (work.degree(x) - inside) * 2 >= work.degree(x)
            })
            .collect();
        let f2: Vec<usize> = f_prime
            .iter()
            .copied()
            .filter(|&x| work.degree_into(x, &f_prime) as f64 <= 4.0 * d_f)
            .collect();
        if f2.is_empty() {
            continue;
        }
        // bucket the rest by degree into f2
        let mut best_u: Option<(usize, usize)> = None; // (j, edge count)
        let rest: Vec<usize> = (0..n_w).filter(|v| !f2.contains(v)).collect();
        let mut u_buckets: Vec<Vec<usize>> = vec![Vec::new(); ell + 1];
        for &x in &rest {
            let dx = work.degree_into(x, &f2) as f64;
            for j in 0..=ell {
                let lo_j = d_f * 2f64.powi(j as i32 - 1) / (100.0 * log_l);
                let hi_j = d_f * 2f64.powi(j as i32) / (100.0 * log_l);
                if dx >= lo_j && dx < hi_j {
                    u_buckets[j].push(x);
                    break;
                }
            }
        }
        for (j, bucket) in u_buckets.iter().enumerate() {
            if bucket.is_empty() {
                continue;
            }
            let e = work.edges_between(&f2, bucket);
            if e > 0 && best_u.map(|(_, be)| e > be).unwrap_or(true) {
                best_u = Some((j, e));
            }
        }
        let Some((j_star, _)) = best_u else { continue };
        let u_j = &u_buckets[j_star];
        let u_j2: Vec<usize> = u_j
            .iter()
            .copied()
            .filter(|&x| work.degree_into(x, u_j) as f64 <= 4.0 * d_f)
            .collect();
        if u_j2.is_empty() {
            continue;
        }
        let part = BipartitePartition::new(f2.clone(), u_j2.clone());
        let m_slack = 1200.0 * log_l;
        let Ok((refined, _)) = biregular_to_regular(&work, &part, m_slack, seed ^ attempt as u64, 50) else {
            continue;
        };
        let mut set: Vec<usize> = refined.a.iter().chain(refined.b.iter()).map(|&v| map[v]).collect();
        set.sort_unstable();
        if set.is_empty() {
            continue;
        }
        if let Ok(cert) = AlmostRegularCertificate::from_set(g, &set) {
            if cert_ok(&cert) {
                return Ok((cert, attempt));
            }
        }
    }
    Err(OpError::BudgetExhausted { op: "bootstrap_almost_regular", attempts: budget })
}

/// Heavy/light split: either a verified unbalanced partition carrying at
/// least `n d / 8` crossing edges, or an almost-regular certificate from
/// the light side. The two outcome invariants are re-checked before
/// returning.
pub fn dichotomy(
    g: &Graph,
    d: Rational,
    l: f64,
    seed: u64,
    budget: u32,
    cfg: &RunConfig,
) -> Result<(DichotomyOutcome, u32), OpError> {
    let d_f = d.to_f64().unwrap();
    let n = g.n();
    let heavy: Vec<usize> = (0..n).filter(|&v| g.degree(v) as f64 >= l * d_f).collect();
    let light: Vec<usize> = (0..n).filter(|&v| (g.degree(v) as f64) < l * d_f).collect();
    if !heavy.is_empty() {
        let across = g.edges_between(&light, &heavy);
        let threshold = d * Ratio::from_integer(n as i64) / Ratio::from_integer(8);
        let enough_edges = Ratio::from_integer(across as i64) >= threshold;
        let balanced_enough = light.len() as f64 >= l * heavy.len() as f64 / 2.0;
        if enough_edges && balanced_enough {
            return Ok((
                DichotomyOutcome::Unbalanced {
                    part: BipartitePartition::new(light, heavy),
                    edges_across: across,
                },
                1,
            ));
        }
    }
    // light side is degree-bounded; bootstrap it with d/2 and slack 2l
    let (sub, map) = g.induced(&light)?;
    let (cert, attempts) = bootstrap_almost_regular(&sub, d / Ratio::from_integer(2), 2.0 * l, seed, budget, cfg)?;
    let host_set: Vec<usize> = cert.subgraph.iter().map(|&v| map[v]).collect();
    let host_cert = AlmostRegularCertificate::from_set(g, &host_set)?;
    Ok((DichotomyOutcome::AlmostRegular(host_cert), attempts))
}
