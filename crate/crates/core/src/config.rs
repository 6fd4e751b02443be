//! Run configuration: seeds, retry budgets, and explicit values for every
//! constant the randomized routines need. Defaults follow the derivations
//! behind each routine; at bench scale several thresholds evaluate to
//! values near 1 and can be overridden per run.

use crate::oracle::OracleBudget;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub seed: u64,
    /// Resample cap for every Las Vegas loop.
    pub retry_budget: u32,
    /// Vertex cap for the exponential-time oracles.
    pub oracle_max_vertices: usize,
    pub oracle_max_edges: usize,

    /// Bootstrap certificate constants: output max degree is at most
    /// `c1 * avg * log^2(l)` and average at least `d / (c2 * log^2(l))`.
    pub bootstrap_c1: f64,
    pub bootstrap_c2: f64,
    /// Bucket arithmetic needs a floor on the slack parameter.
    pub l_clamp: f64,

    /// Override for the L parameter of the heavy/light dichotomy; per-driver
    /// formula defaults apply when unset.
    pub dichotomy_l: Option<f64>,
    /// Target order of the balanced clique subdivision the drivers aim for.
    pub h_target: Option<usize>,
    /// Direct induced-pattern checks are attempted only up to these sizes.
    pub pattern_check_max_h: usize,
    pub pattern_check_max_k: usize,
    pub pattern_nodes_cap: u64,
    /// Node cap for the biclique searches.
    pub kss_nodes_cap: u64,

    /// Epsilon overrides for the dense-or-C4-free split and the one-sided
    /// embedding; formula defaults when unset.
    pub eps_dense: Option<f64>,
    pub eps_embed: Option<f64>,
    /// Degree threshold and common-neighborhood target for dependent
    /// random choice (defaults n^{1 - 1/(100 s)} and n^{0.9}).
    pub drc_high_degree: Option<f64>,
    pub drc_common_target: Option<f64>,
    /// Floor on the size of the set dependent random choice returns.
    pub drc_min_size: Option<usize>,
    /// Trace-set size floor in the one-sided embedding (default n^{4/5}).
    pub embed_trace_target: Option<f64>,
    /// Average-degree target for the deletion method (default d^{delta/(10 |F|)}).
    pub delete_target: Option<f64>,
    /// Target average degree of extracted hypergraphs (defaults to the
    /// derived formula, about 1 at bench scale).
    pub dh_target: Option<f64>,
    /// Cleanup sampling probability override for the almost-regular
    /// extraction (default d0^{-9/10}).
    pub cleanup_p: Option<f64>,
    /// Exponent eta in the almost-regular extraction.
    pub eta: f64,
    /// Uniformity D used by the degree-bounded driver.
    pub uniformity_d: usize,
    /// Cap on explicitly returned independent-set families.
    pub supersat_cap: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            retry_budget: 200,
            oracle_max_vertices: 24,
            oracle_max_edges: 300,
            bootstrap_c1: 24.0 * 1200.0,
            bootstrap_c2: 3200.0,
            l_clamp: 256.0,
            dichotomy_l: None,
            h_target: None,
            pattern_check_max_h: 5,
            pattern_check_max_k: 4,
            pattern_nodes_cap: 2_000_000,
            kss_nodes_cap: 4_000_000,
            eps_dense: None,
            eps_embed: None,
            drc_high_degree: None,
            drc_common_target: None,
            drc_min_size: None,
            embed_trace_target: None,
            delete_target: None,
            dh_target: None,
            cleanup_p: None,
            eta: 1.0 / 2000.0,
            uniformity_d: 3,
            supersat_cap: 200_000,
        }
    }
}

impl RunConfig {
    pub fn with_seed(seed: u64) -> Self {
        RunConfig { seed, ..Default::default() }
    }

    pub fn oracle_budget(&self) -> OracleBudget {
        OracleBudget { max_vertices: self.oracle_max_vertices, max_edges: self.oracle_max_edges }
    }
}

/// Seed stream for retry loops: attempt `i` of operation `salt` under a
/// base seed gets its own generator, so runs replay bit-for-bit and
/// attempts stay independent.
pub fn derive_rng(seed: u64, salt: u64, attempt: u32) -> ChaCha8Rng {
    let mut z = seed ^ salt.rotate_left(17) ^ ((attempt as u64) << 32 | attempt as u64);
    // splitmix64 finalizer
    z = z.wrapping_add(0x9E3779B97F4A7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^= z >> 31;
    ChaCha8Rng::seed_from_u64(z)
}
