//! Bench suites: oracle parity, per-operation success rates, and the
//! biclique-appearance sweep. Reports are deterministic per seed and come
//! as a text table plus CSV lines.

use indsub_core::config::RunConfig;
use indsub_core::detect;
use indsub_core::gen;
use indsub_core::graph::{BipartitePartition, Graph};
use indsub_core::oracle;
use indsub_core::regularize;
use indsub_core::sparsify;
use indsub_core::subdivision;

pub struct Report {
    pub table: String,
    pub csv: String,
}

/// Compares every fast detector against its brute-force oracle over a
/// small seeded corpus. The table has one row per detector.
pub fn oracle_parity(seed: u64) -> Report {
    let budget = oracle::OracleBudget::default();
    let mut rows: Vec<(&str, usize, usize)> = vec![
        ("c4-count", 0, 0),
        ("max-clique", 0, 0),
        ("kss", 0, 0),
        ("induced-kst", 0, 0),
        ("independent-count", 0, 0),
    ];
    let mut csv = String::from("detector,instances,mismatches\n");
    let ps = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];
    let mut idx = 0u64;
    for round in 0..56u64 {
        for &p in &ps {
            if idx >= 500 {
                break;
            }
            idx += 1;
            let g = gen::gnp(12, p, seed.wrapping_add(round * 1000 + (p * 100.0) as u64));
            let all: Vec<usize> = (0..12).collect();
            // 4-cycle count
            rows[0].1 += 1;
            if detect::count_c4(&g) != oracle::oracle_count_c4(&g, budget).unwrap() {
                rows[0].2 += 1;
            }
            // maximum clique size
            rows[1].1 += 1;
            if detect::max_clique(&g).len() != oracle::oracle_max_clique(&g, budget).unwrap().len() {
                rows[1].2 += 1;
            }
            // biclique existence for s = 2, 3
            for s in 2..=3 {
                rows[2].1 += 1;
                let fast = detect::find_kss(&g, s, 1 << 22).is_some();
                let slow = oracle::oracle_find_kss(&g, s, budget).unwrap().is_some();
                if fast != slow {
                    rows[2].2 += 1;
                }
            }
            // induced biclique existence
            for (s, t) in [(1, 2), (2, 2), (2, 3)] {
                rows[3].1 += 1;
                let fast = detect::find_induced_kst(&g, s, t, 1 << 22).is_some();
                let slow = oracle::oracle_find_induced_kst(&g, s, t, budget).unwrap().is_some();
                if fast != slow {
                    rows[3].2 += 1;
                }
            }
            // independent-set counts
            for s in 2..=3 {
                rows[4].1 += 1;
                let fast = detect::count_independent_sets(&g, s, &all);
                let slow = oracle::oracle_independent_sets(&g, s, &all, budget).unwrap();
                if fast != slow {
                    rows[4].2 += 1;
                }
            }
        }
    }
    let mut table = format!("{:<20} {:>10} {:>12}\n", "detector", "instances", "mismatches");
    for (name, n, bad) in &rows {
        table.push_str(&format!("{name:<20} {n:>10} {bad:>12}\n"));
        csv.push_str(&format!("{name},{n},{bad}\n"));
    }
    Report { table, csv }
}

/// Runs each randomized operation over a seeded corpus and reports
/// attempts, successes and mean retries.
pub fn lemma_success_rates(seed: u64) -> Report {
    struct Row {
        name: &'static str,
        runs: u32,
        successes: u32,
        total_retries: u64,
    }
    let mut rows: Vec<Row> = Vec::new();
    let cfg = RunConfig::with_seed(seed);

    // biregular resampling on random left-regular bipartite graphs
    let mut row = Row { name: "biregular_to_regular", runs: 0, successes: 0, total_retries: 0 };
    for i in 0..30u64 {
        let g = gen::random_left_regular(60, 60, 6, seed ^ i);
        let part = BipartitePartition::new((0..60).collect(), (60..120).collect());
        row.runs += 1;
        if let Ok((_, attempts)) = regularize::biregular_to_regular(&g, &part, 8.0, seed ^ i, 200) {
            row.successes += 1;
            row.total_retries += attempts as u64;
        }
    }
    rows.push(row);

    // dichotomy over mixed hubs and sparse random graphs
    let mut row = Row { name: "dichotomy", runs: 0, successes: 0, total_retries: 0 };
    for i in 0..30u64 {
        let g = if i % 2 == 0 { gen::hubs(400, 2) } else { gen::gnp(300, 8.0 / 300.0, seed ^ i) };
        row.runs += 1;
        if let Ok((_, attempts)) = regularize::dichotomy(&g, g.average_degree(), 16.0, seed ^ i, 200, &cfg) {
            row.successes += 1;
            row.total_retries += attempts as u64;
        }
    }
    rows.push(row);

    // deletion method with the 4-cycle pattern
    let mut row = Row { name: "delete_copies(C4)", runs: 0, successes: 0, total_retries: 0 };
    for i in 0..30u64 {
        let g = gen::gnp(250, 5.0 / 250.0, seed ^ (i + 100));
        row.runs += 1;
        if let Ok((_, attempts)) = sparsify::delete_copies(&g, &Graph::cycle(4), 4.0, 0.5, 0.1, seed ^ i, 300, &cfg) {
            row.successes += 1;
            row.total_retries += attempts as u64;
        }
    }
    rows.push(row);

    // unbalanced extraction on engineered instances
    let mut row = Row { name: "unbalanced_to_subdivision", runs: 0, successes: 0, total_retries: 0 };
    for i in 0..10u64 {
        let g = gen::distinct_tuples_unbalanced(120, 2500, 2, 15_000, seed ^ i);
        let part = BipartitePartition::new((120..g.n()).collect(), (0..120).collect());
        row.runs += 1;
        if let Ok(run) = subdivision::unbalanced_to_subdivision(&g, &part, g.average_degree(), 2, 3, seed ^ i, 300) {
            row.successes += 1;
            row.total_retries += run.attempts as u64;
        }
    }
    rows.push(row);

    // almost-regular extraction on incidence planes
    let mut row = Row { name: "almost_regular_to_subdivision", runs: 0, successes: 0, total_retries: 0 };
    let plane = gen::incidence_plane(8).unwrap();
    for i in 0..10u64 {
        let mut local = cfg.clone();
        local.cleanup_p = Some(1.0);
        row.runs += 1;
        if let Ok((_, attempts)) = subdivision::almost_regular_to_subdivision(&plane, 2, 2, 4, seed ^ i, 400, &local) {
            row.successes += 1;
            row.total_retries += attempts as u64;
        }
    }
    rows.push(row);

    let mut table = format!("{:<30} {:>8} {:>10} {:>13}\n", "operation", "runs", "successes", "mean retries");
    let mut csv = String::from("operation,runs,successes,mean_retries\n");
    for r in &rows {
        let mean = if r.successes > 0 { r.total_retries as f64 / r.successes as f64 } else { f64::NAN };
        table.push_str(&format!("{:<30} {:>8} {:>10} {:>13.2}\n", r.name, r.runs, r.successes, mean));
        csv.push_str(&format!("{},{},{},{:.3}\n", r.name, r.runs, r.successes, mean));
    }
    Report { table, csv }
}

/// Sweep over (n, p): does a K_{3,3} appear, and which driver branch
/// fires? Frequencies are per 20 seeds.
pub fn tightness_sweep(seed: u64) -> Report {
    let ns = [50usize, 100, 200];
    let ps = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];
    let mut table = format!("{:>5} {:>6} {:>10} {:>22}\n", "n", "p", "kss3-freq", "top-branch");
    let mut csv = String::from("n,p,seed,kss3,branch\n");
    for &n in &ns {
        for &p in &ps {
            let mut hits = 0;
            let mut branch_counts: std::collections::BTreeMap<String, usize> = Default::default();
            for s in 0..20u64 {
                let inst_seed = seed ^ (n as u64 * 1315423911) ^ ((p * 1000.0) as u64) ^ s;
                let g = gen::gnp(n, p, inst_seed);
                let found = detect::find_kss(&g, 3, 1 << 22).is_some();
                if found {
                    hits += 1;
                }
                let cfg = RunConfig::with_seed(inst_seed);
                let run = indsub_core::pipeline::main_driver(&g, 2, 2, 4, &cfg);
                let branch = run
                    .trace
                    .entries
                    .iter()
                    .rev()
                    .find(|e| e.op == "emit")
                    .map(|e| e.params.clone())
                    .unwrap_or_else(|| "failure".to_string());
                *branch_counts.entry(branch.clone()).or_default() += 1;
                csv.push_str(&format!("{n},{p},{s},{},{branch}\n", found as u8));
            }
            let top = branch_counts
                .iter()
                .max_by_key(|(_, &c)| c)
                .map(|(b, c)| format!("{b} ({c}/20)"))
                .unwrap_or_default();
            table.push_str(&format!("{n:>5} {p:>6.1} {:>10.2} {top:>22}\n", hits as f64 / 20.0));
        }
    }
    Report { table, csv }
}
