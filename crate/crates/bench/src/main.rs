use std::path::PathBuf;

use anyhow::{Context, Result};
use ccsub_bench::config::FileConfig;
use ccsub_bench::report::{markdown_table, write_reports};
use ccsub_bench::run_experiment;
use clap::Parser;

/// Run chance-constrained submodular maximization experiments.
#[derive(Parser, Debug)]
#[command(name = "ccsub-bench", version)]
struct Cli {
    /// TOML config file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// coverage | im
    #[arg(long)]
    problem: Option<String>,
    /// DIMACS/edge-pair graph (coverage) or "u v p" edge file (im).
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long = "C", value_delimiter = ',')]
    capacity: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    alpha: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    delta: Option<Vec<f64>>,
    /// GA, GSEMO, NSGA-II (comma separated).
    #[arg(long, value_delimiter = ',')]
    algo: Option<Vec<String>>,
    #[arg(long)]
    runs: Option<usize>,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// auto | chebyshev | chernoff
    #[arg(long)]
    bound: Option<String>,
    /// Output directory for results.csv and results.md.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write runs.jsonl with the best subset of every run.
    #[arg(long)]
    jsonl: bool,
    /// 10^5 evaluations and 10 runs.
    #[arg(long)]
    desk_scale: bool,
    #[arg(long)]
    label: Option<String>,
    #[arg(long)]
    im_nodes: Option<usize>,
    #[arg(long)]
    im_edges: Option<usize>,
    #[arg(long)]
    im_p: Option<f64>,
    /// Cascade simulations per evaluation.
    #[arg(long)]
    simulations: Option<usize>,
    /// Simulations for the final estimate of reported solutions.
    #[arg(long)]
    report_simulations: Option<usize>,
    /// Fresh cascades per evaluation instead of common random numbers.
    #[arg(long)]
    no_crn: bool,
}

impl Cli {
    fn overrides(self) -> FileConfig {
        FileConfig {
            problem: self.problem,
            graph: self.graph,
            label: self.label,
            capacities: self.capacity,
            alphas: self.alpha,
            deltas: self.delta,
            algorithms: self.algo,
            runs: self.runs,
            budget: self.budget,
            seed: self.seed,
            bound: self.bound,
            out: self.out,
            jsonl: self.jsonl.then_some(true),
            im_nodes: self.im_nodes,
            im_edges: self.im_edges,
            im_p: self.im_p,
            simulations: self.simulations,
            report_simulations: self.report_simulations,
            crn: self.no_crn.then_some(false),
            desk_scale: self.desk_scale.then_some(true),
        }
    }
}

fn main() -> Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let base = match &cli.config {
        Some(path) => FileConfig::load(path).with_context(|| format!("loading {}", path.display()))?,
        None => FileConfig::default(),
    };
    let cfg = base.merge(cli.overrides()).resolve()?;
    let out = run_experiment(&cfg)?;
    match &cfg.out {
        Some(dir) => {
            for path in write_reports(&out.rows, &out.records, dir, cfg.jsonl)? {
                println!("wrote {}", path.display());
            }
        }
        None => print!("{}", markdown_table(&out.rows)),
    }
    Ok(())
}
