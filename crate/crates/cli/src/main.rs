//! Command-line surface: seeded instance generation, driver runs emitting
//! JSON witness documents, independent witness verification, and the
//! bench suites.

use clap::{Parser, Subcommand};
use indsub_cli::bench;
use indsub_cli::format::{emit_edge_list, parse_edge_list, WitnessDocument};
use indsub_core::config::RunConfig;
use indsub_core::gen;
use indsub_core::pipeline;
use indsub_core::shattering::construct_hk;
use indsub_core::witness::verify_witness;
use std::collections::BTreeMap;
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "indsub", about = "Structural graph search with machine-verifiable witnesses")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a seeded instance as an edge-list file.
    Generate {
        /// Generator: gnp | complement-gnp | incidence-plane | h_k |
        /// one-subdivision-of-clique | multipartite
        #[arg(long = "gen")]
        generator: String,
        /// Generator parameters, e.g. --param n=100 p=0.5
        #[arg(long = "param", value_name = "KEY=VALUE", num_args = 0..)]
        params: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Run a driver on an edge-list file and emit a witness document.
    Analyze {
        file: std::path::PathBuf,
        /// Driver: main | main1 | main2 | base-case | davies
        #[arg(long)]
        driver: String,
        #[arg(long = "param", value_name = "KEY=VALUE", num_args = 0..)]
        params: Vec<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        budget: Option<u32>,
        /// Optional JSON run configuration; explicit flags win over it.
        #[arg(long)]
        config: Option<std::path::PathBuf>,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Re-derive the verdict of a witness document against a graph file.
    Verify {
        graph: std::path::PathBuf,
        witness: std::path::PathBuf,
    },
    /// Deterministic measurement suites.
    Bench {
        /// Suite: oracle-parity | lemma-success-rates | tightness-sweep
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// CSV output path; the text table always goes to stdout.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
}

fn parse_params(raw: &[String]) -> Result<BTreeMap<String, String>, String> {
    let mut out = BTreeMap::new();
    for item in raw {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| format!("bad --param '{item}': expected KEY=VALUE"))?;
        out.insert(k.to_string(), v.to_string());
    }
    Ok(out)
}

fn get_usize(params: &BTreeMap<String, String>, key: &str) -> Result<usize, String> {
    params
        .get(key)
        .ok_or_else(|| format!("missing parameter {key}"))?
        .parse()
        .map_err(|e| format!("bad parameter {key}: {e}"))
}

fn get_usize_or(params: &BTreeMap<String, String>, key: &str, default: usize) -> Result<usize, String> {
    match params.get(key) {
        None => Ok(default),
        Some(v) => v.parse().map_err(|e| format!("bad parameter {key}: {e}")),
    }
}

fn get_f64(params: &BTreeMap<String, String>, key: &str) -> Result<f64, String> {
    params
        .get(key)
        .ok_or_else(|| format!("missing parameter {key}"))?
        .parse()
        .map_err(|e| format!("bad parameter {key}: {e}"))
}

fn write_out(path: &Option<std::path::PathBuf>, content: &str) -> Result<(), String> {
    match path {
        Some(p) => {
            // write atomically: temp file in the target directory, then rename
            let dir = p.parent().filter(|d| !d.as_os_str().is_empty()).map(|d| d.to_path_buf());
            let tmp = dir.unwrap_or_else(|| std::path::PathBuf::from(".")).join(format!(
                ".indsub-tmp-{}",
                std::process::id()
            ));
            std::fs::write(&tmp, content).map_err(|e| format!("write {}: {e}", tmp.display()))?;
            std::fs::rename(&tmp, p).map_err(|e| format!("rename to {}: {e}", p.display()))?;
            Ok(())
        }
        None => {
            print!("{content}");
            std::io::stdout().flush().ok();
            Ok(())
        }
    }
}

fn run_generate(
    generator: &str,
    params: &BTreeMap<String, String>,
    seed: u64,
) -> Result<String, String> {
    let g = match generator {
        "gnp" => {
            let n = get_usize(params, "n")?;
            let p = get_f64(params, "p")?;
            gen::gnp(n, p, seed)
        }
        "complement-gnp" => {
            let n = get_usize(params, "n")?;
            let p = get_f64(params, "p")?;
            gen::complement_gnp(n, p, seed)
        }
        "incidence-plane" => {
            let q = get_usize(params, "q")? as u32;
            gen::incidence_plane(q).map_err(|e| e.to_string())?
        }
        "h_k" => {
            let k = get_usize(params, "k")?;
            if k < 2 {
                return Err("h_k needs k >= 2".to_string());
            }
            construct_hk(k).0
        }
        "one-subdivision-of-clique" => {
            let h = get_usize(params, "h")?;
            gen::one_subdivision_of_clique(h)
        }
        "multipartite" => {
            let parts = get_usize(params, "parts")?;
            let size = get_usize(params, "size")?;
            gen::multipartite(parts, size)
        }
        other => return Err(format!("unknown generator '{other}'")),
    };
    Ok(emit_edge_list(&g))
}

fn run_analyze(
    file: &std::path::Path,
    driver: &str,
    params: &BTreeMap<String, String>,
    seed: Option<u64>,
    budget: Option<u32>,
    config: Option<&std::path::Path>,
) -> Result<(WitnessDocument, bool), String> {
    let text = std::fs::read_to_string(file).map_err(|e| format!("read {}: {e}", file.display()))?;
    let g = parse_edge_list(&text)?;
    let mut cfg = match config {
        Some(path) => {
            let raw = std::fs::read_to_string(path).map_err(|e| format!("read {}: {e}", path.display()))?;
            serde_json::from_str::<RunConfig>(&raw).map_err(|e| format!("parse config {}: {e}", path.display()))?
        }
        None => RunConfig::default(),
    };
    // explicit flags win over the config file
    if let Some(seed) = seed {
        cfg.seed = seed;
    }
    if let Some(budget) = budget {
        cfg.retry_budget = budget;
    }
    let seed = cfg.seed;
    let budget = cfg.retry_budget;
    if let Some(eps) = params.get("eps") {
        cfg.eps_dense = Some(eps.parse().map_err(|e| format!("bad parameter eps: {e}"))?);
    }
    if let Some(l) = params.get("l") {
        cfg.dichotomy_l = Some(l.parse().map_err(|e| format!("bad parameter l: {e}"))?);
    }
    if let Some(h) = params.get("h_target") {
        cfg.h_target = Some(h.parse().map_err(|e| format!("bad parameter h_target: {e}"))?);
    }
    let run = match driver {
        "main" => {
            let s = get_usize_or(params, "s", 2)?;
            let t = get_usize_or(params, "t", s)?;
            let k = get_usize(params, "k")?;
            pipeline::main_driver(&g, s, t, k, &cfg)
        }
        "main1" => {
            let h = get_usize(params, "h")?;
            let s = get_usize_or(params, "s", 2)?;
            pipeline::main1(&g, h, s, &cfg)
        }
        "main2" => {
            let k = get_usize(params, "k")?;
            let s = get_usize_or(params, "s", 2)?;
            pipeline::main2(&g, k, s, &cfg)
        }
        "base-case" => {
            let k = get_usize_or(params, "k", 3)?;
            pipeline::base_case(&g, k, &cfg)
        }
        "davies" => {
            let t = get_usize(params, "t")?;
            pipeline::davies(&g, t, &cfg)
        }
        other => return Err(format!("unknown driver '{other}'")),
    };
    let doc = WitnessDocument::from_run(driver, params.clone(), seed, budget, &run.result, &run.trace);
    Ok((doc, run.result.is_ok()))
}

fn run_verify(graph: &std::path::Path, witness: &std::path::Path) -> Result<Result<(), String>, String> {
    let text = std::fs::read_to_string(graph).map_err(|e| format!("read {}: {e}", graph.display()))?;
    let g = parse_edge_list(&text)?;
    let doc_text = std::fs::read_to_string(witness).map_err(|e| format!("read {}: {e}", witness.display()))?;
    let doc: WitnessDocument = serde_json::from_str(&doc_text).map_err(|e| format!("parse document: {e}"))?;
    match doc.witness {
        None => Ok(Err(format!(
            "document carries no witness (kind {}, reason {:?})",
            doc.kind, doc.failure_reason
        ))),
        Some(w) => {
            if w.kind_name() != doc.kind {
                return Ok(Err(format!("document kind '{}' mislabels payload '{}'", doc.kind, w.kind_name())));
            }
            match verify_witness(&g, &w) {
                Ok(()) => Ok(Ok(())),
                Err(rej) => Ok(Err(rej.clause)),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Generate { generator, params, seed, out } => {
            let params = match parse_params(&params) {
                Ok(p) => p,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            };
            match run_generate(&generator, &params, seed) {
                Ok(content) => match write_out(&out, &content) {
                    Ok(()) => ExitCode::SUCCESS,
                    Err(e) => {
                        eprintln!("error: {e}");
                        ExitCode::from(1)
                    }
                },
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Command::Analyze { file, driver, params, seed, budget, config, out } => {
            let params = match parse_params(&params) {
                Ok(p) => p,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            };
            match run_analyze(&file, &driver, &params, seed, budget, config.as_deref()) {
                Ok((doc, verified)) => {
                    let json = serde_json::to_string_pretty(&doc).expect("document serializes");
                    if write_out(&out, &format!("{json}\n")).is_err() {
                        return ExitCode::from(1);
                    }
                    if verified {
                        eprintln!("verified witness: {}", doc.kind);
                        ExitCode::SUCCESS
                    } else {
                        eprintln!("no witness: {}", doc.failure_reason.as_deref().unwrap_or("unknown"));
                        ExitCode::from(2)
                    }
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Command::Verify { graph, witness } => match run_verify(&graph, &witness) {
            Ok(Ok(())) => {
                println!("accept");
                ExitCode::SUCCESS
            }
            Ok(Err(clause)) => {
                println!("reject: {clause}");
                ExitCode::from(2)
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        },
        Command::Bench { suite, seed, out } => {
            let report = match suite.as_str() {
                "oracle-parity" => bench::oracle_parity(seed),
                "lemma-success-rates" => bench::lemma_success_rates(seed),
                "tightness-sweep" => bench::tightness_sweep(seed),
                other => {
                    eprintln!("error: unknown suite '{other}'");
                    return ExitCode::from(1);
                }
            };
            println!("{}", report.table);
            if let Some(path) = out {
                if let Err(e) = write_out(&Some(path), &report.csv) {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            } else {
                println!("--- csv ---\n{}", report.csv);
            }
            ExitCode::SUCCESS
        }
    }
}
