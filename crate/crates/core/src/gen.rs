//! Seeded instance generators: random graphs, incidence constructions and
//! the engineered families the tests and the bench suites draw from.

use crate::error::OpError;
use crate::graph::Graph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdos-Renyi G(n, p), deterministic per (n, p, seed).
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = rng_for(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p.clamp(0.0, 1.0)) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Complement of a G(n, p) sample.
pub fn complement_gnp(n: usize, p: f64, seed: u64) -> Graph {
    let g = gnp(n, p, seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Complete multipartite graph with `parts` parts of `size` vertices each.
pub fn multipartite(parts: usize, size: usize) -> Graph {
    let n = parts * size;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if u / size != v / size {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Arithmetic in GF(2^t), elements as bit vectors of polynomial coefficients.
#[derive(Clone, Copy)]
pub(crate) struct Gf {
    pub q: u32,
    poly: u32,
    t: u32,
}

impl Gf {
    pub fn new(q: u32) -> Option<Gf> {
        let (t, poly) = match q {
            2 => (1, 0b11),
            4 => (2, 0b111),
            8 => (3, 0b1011),
            16 => (4, 0b10011),
            32 => (5, 0b100101),
            _ => return None,
        };
        Some(Gf { q, poly, t })
    }

    pub fn mul(&self, mut a: u32, mut b: u32) -> u32 {
        let mut acc = 0u32;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a & self.q != 0 {
                a ^= self.poly;
            }
        }
        debug_assert!(acc < self.q, "gf mul overflow t={}", self.t);
        acc
    }
}

/// Incidence graph of the projective plane PG(2, q) for q a power of two
/// up to 32: (q+1)-regular, girth 6, no K_{2,2} subgraph.
/// Points come first (ids `0..q^2+q+1`), lines after.
pub fn incidence_plane(q: u32) -> Result<Graph, OpError> {
    let gf = Gf::new(q).ok_or_else(|| OpError::precondition("incidence_plane", format!("q = {q} not a supported power of two")))?;
    // normalized homogeneous triples: (1,a,b), (0,1,a), (0,0,1)
    let mut triples: Vec<[u32; 3]> = Vec::new();
    for a in 0..q {
        for b in 0..q {
            triples.push([1, a, b]);
        }
    }
    for a in 0..q {
        triples.push([0, 1, a]);
    }
    triples.push([0, 0, 1]);
    let np = triples.len();
    let mut edges = Vec::new();
    for (i, p) in triples.iter().enumerate() {
        for (j, l) in triples.iter().enumerate() {
            // characteristic 2: the form x0*y0 + x1*y1 + x2*y2 vanishes
            let dot = gf.mul(p[0], l[0]) ^ gf.mul(p[1], l[1]) ^ gf.mul(p[2], l[2]);
            if dot == 0 {
                edges.push((i, np + j));
            }
        }
    }
    Graph::from_edges(2 * np, &edges)
}

/// The 1-subdivision of K_h: branch vertices `0..h`, then one vertex per
/// pair {i, j} adjacent to exactly i and j.
pub fn one_subdivision_of_clique(h: usize) -> Graph {
    let mut edges = Vec::new();
    let mut next = h;
    for i in 0..h {
        for j in i + 1..h {
            edges.push((i, next));
            edges.push((j, next));
            next += 1;
        }
    }
    Graph::from_edges(next, &edges).unwrap()
}

/// Petersen graph: outer 5-cycle, inner pentagram, spokes.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, 5 + i));
    }
    Graph::from_edges(10, &edges).unwrap()
}

/// Heawood graph as the Fano plane incidence graph: 3-regular, girth 6.
pub fn heawood() -> Graph {
    let mut edges = Vec::new();
    for j in 0..7usize {
        for d in [0, 1, 3] {
            edges.push(((j + d) % 7, 7 + j));
        }
    }
    Graph::from_edges(14, &edges).unwrap()
}

/// Every vertex of the clique `K_parts` blown up into a cycle of length
/// `len`: parts are internally a cycle and completely joined across parts.
/// Dense host whose only induced sparse patterns are the part cycles.
pub fn clique_blowup_of_cycles(parts: usize, len: usize) -> Graph {
    assert!(len >= 4);
    let n = parts * len;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if u / len != v / len {
                edges.push((u, v));
            }
        }
    }
    for p in 0..parts {
        for i in 0..len {
            edges.push((p * len + i, p * len + (i + 1) % len));
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// `hubs` vertices each adjacent to all of `leaves` leaf vertices; leaves
/// come first, hubs after.
pub fn hubs(leaves: usize, hubs: usize) -> Graph {
    let mut edges = Vec::new();
    for h in 0..hubs {
        for l in 0..leaves {
            edges.push((l, leaves + h));
        }
    }
    Graph::from_edges(leaves + hubs, &edges).unwrap()
}

/// Bipartite graph where every left vertex gets `left_degree` distinct
/// random right neighbors. Left side is `0..left`, right side after.
pub fn random_left_regular(left: usize, right: usize, left_degree: usize, seed: u64) -> Graph {
    assert!(left_degree <= right);
    let mut rng = rng_for(seed);
    let mut edges = Vec::new();
    let pool: Vec<usize> = (0..right).collect();
    for u in 0..left {
        let mut p = pool.clone();
        let (chosen, _) = p.partial_shuffle(&mut rng, left_degree);
        for &v in chosen.iter() {
            edges.push((u, left + v));
        }
    }
    Graph::from_edges(left + right, &edges).unwrap()
}

/// As `distinct_tuples_unbalanced` but tuples may repeat: left vertices
/// draw their `s`-subsets of the hubs independently, so popular subsets
/// occur with multiplicity.
pub fn random_tuples_unbalanced(b: usize, a: usize, s: usize, pad: usize, seed: u64) -> Graph {
    let mut rng = rng_for(seed);
    let mut edges = Vec::new();
    for left in 0..a {
        let mut tup: Vec<usize> = Vec::with_capacity(s);
        while tup.len() < s {
            let x = rng.gen_range(0..b);
            if !tup.contains(&x) {
                tup.push(x);
            }
        }
        for &h in &tup {
            edges.push((b + left, h));
        }
    }
    Graph::from_edges(b + a + pad, &edges).unwrap()
}

/// Unbalanced instance: `b` independent hubs (ids `0..b`), `a` left
/// vertices each wired to a *distinct* random `s`-subset of the hubs, and
/// `pad` isolated vertices to dilute the global average degree.
/// Requires `a <= C(b, s)` so the hyperedges can stay pairwise distinct.
pub fn distinct_tuples_unbalanced(b: usize, a: usize, s: usize, pad: usize, seed: u64) -> Graph {
    let mut rng = rng_for(seed);
    let mut chosen = std::collections::HashSet::new();
    let mut edges = Vec::new();
    let mut placed = 0;
    let mut guard = 0u64;
    while placed < a {
        guard += 1;
        assert!(guard < 200 * a as u64 + 10_000, "tuple space too small: a > C(b, s)?");
        let mut tup: Vec<usize> = Vec::with_capacity(s);
        while tup.len() < s {
            let x = rng.gen_range(0..b);
            if !tup.contains(&x) {
                tup.push(x);
            }
        }
        tup.sort_unstable();
        if chosen.insert(tup.clone()) {
            let av = b + placed;
            for &h in &tup {
                edges.push((av, h));
            }
            placed += 1;
        }
    }
    Graph::from_edges(b + a + pad, &edges).unwrap()
}
