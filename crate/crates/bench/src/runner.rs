//! Runs the configured grid and aggregates results per cell and algorithm.

use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use ccsub_core::algorithms::{
    greedy_run, gsemo_run, nsga2_run, AlgoConfig, AlgorithmKind, RunRecord,
};
use ccsub_core::fitness::Formulation;
use ccsub_core::problems::{
    generate_im_graph, graph_to_coverage, parse_dimacs_edges, parse_im_edges, CascadeSettings,
    CoverageInstance, InfluenceInstance,
};
use ccsub_core::{BoundKind, ProblemInstance, SubmodularObjective, WeightModel};
use log::{info, warn};
use rayon::prelude::*;

use crate::config::{ExperimentConfig, ProblemSpec};
use crate::error::{BenchError, Result};
use crate::stats::{bonferroni_posthoc, summarize, Summary};

/// Significance level of the Kruskal-Wallis gate and the post-hoc family.
pub const SIGNIFICANCE: f64 = 0.05;

/// Expected weight of every element.
pub const UNIT_COST: f64 = 1.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cell {
    pub capacity: f64,
    pub alpha: f64,
    pub delta: f64,
    pub bound: BoundKind,
}

/// Aggregate of one algorithm on one grid cell.
#[derive(Clone, Debug, PartialEq)]
pub struct SummaryRow {
    pub problem: String,
    pub cell: Cell,
    pub algorithm: AlgorithmKind,
    /// `None` when no run found a feasible set.
    pub summary: Option<Summary>,
    /// Post-hoc marks, e.g. `["1(+)", "3(-)"]`.
    pub stat: Vec<String>,
    pub budget: u64,
}

#[derive(Clone, Debug)]
pub struct ExperimentOutput {
    pub rows: Vec<SummaryRow>,
    /// Every executed run, in grid order.
    pub records: Vec<RunRecord>,
}

pub enum Objective {
    Coverage(CoverageInstance),
    Influence(InfluenceInstance),
}

impl Objective {
    pub fn as_dyn(&self) -> &dyn SubmodularObjective {
        match self {
            Objective::Coverage(c) => c,
            Objective::Influence(i) => i,
        }
    }
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|source| BenchError::Read {
            path: path.to_path_buf(),
            source,
        })
}

pub fn load_objective(cfg: &ExperimentConfig) -> Result<Objective> {
    let cascade = CascadeSettings {
        simulations: cfg.simulations,
        report_simulations: cfg.report_simulations,
        seed: cfg.seed,
        common_random_numbers: cfg.common_random_numbers,
    };
    Ok(match &cfg.problem {
        ProblemSpec::Coverage { graph } => {
            let g = parse_dimacs_edges(open(graph)?)?;
            for w in &g.warnings {
                warn!("{}: {w}", graph.display());
            }
            Objective::Coverage(graph_to_coverage(g.nodes, &g.edges)?)
        }
        ProblemSpec::InfluenceFile { graph } => {
            let g = parse_im_edges(open(graph)?)?;
            Objective::Influence(InfluenceInstance::new(g, cascade)?)
        }
        ProblemSpec::InfluenceGenerated { nodes, edges, p } => {
            let g = generate_im_graph(*nodes, *edges, *p, cfg.seed)?;
            Objective::Influence(InfluenceInstance::new(g, cascade)?)
        }
    })
}

/// Grid cells ordered by capacity, then α, then δ.
pub fn cells(cfg: &ExperimentConfig) -> Vec<Cell> {
    let mut out = Vec::new();
    for &capacity in &cfg.capacities {
        for &alpha in &cfg.alphas {
            for &delta in &cfg.deltas {
                out.push(Cell {
                    capacity,
                    alpha,
                    delta,
                    bound: cfg.bound.for_alpha(alpha),
                });
            }
        }
    }
    out
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    cfg.validate()?;
    let objective = load_objective(cfg)?;
    run_on(cfg, objective.as_dyn())
}

/// Same as [`run_experiment`] with an already loaded objective.
pub fn run_on(cfg: &ExperimentConfig, objective: &dyn SubmodularObjective) -> Result<ExperimentOutput> {
    cfg.validate()?;
    let label = cfg.problem_label();
    let n = objective.ground_size();
    let grid = cells(cfg);
    for cell in &grid {
        // Surface invalid weight models (e.g. δ above the expected cost) before any work.
        WeightModel::uniform(n, UNIT_COST, cell.delta, cell.capacity, cell.alpha)?;
    }

    // Deterministic algorithms run once per cell.
    let tasks: Vec<(usize, AlgorithmKind, usize)> = grid
        .iter()
        .enumerate()
        .flat_map(|(c, _)| {
            cfg.algorithms.iter().flat_map(move |&algo| {
                let runs = if algo.is_deterministic() { 1 } else { cfg.runs };
                (0..runs).map(move |r| (c, algo, r))
            })
        })
        .collect();
    info!("{label}: {} cells, {} runs", grid.len(), tasks.len());

    let records: Vec<RunRecord> = tasks
        .par_iter()
        .map(|&(c, algo, r)| {
            let cell = grid[c];
            let m = WeightModel::uniform(n, UNIT_COST, cell.delta, cell.capacity, cell.alpha)
                .expect("validated above");
            let mut problem = ProblemInstance::new(objective, m, cell.bound)
                .expect("sizes match")
                .with_label(label.clone());
            let algo_cfg = AlgoConfig {
                budget: cfg.budget,
                seed: cfg.seed.wrapping_add(r as u64),
                ..AlgoConfig::default()
            };
            let record = match algo {
                AlgorithmKind::Greedy => greedy_run(&mut problem),
                AlgorithmKind::Gsemo => gsemo_run(&mut problem, &algo_cfg, Formulation::G),
                AlgorithmKind::Nsga2 => nsga2_run(&mut problem, &algo_cfg),
            };
            info!(
                "{label} C={} alpha={} delta={} {algo} seed={}: {:?} in {:.2?}",
                cell.capacity, cell.alpha, cell.delta, record.seed, record.best_value, record.wall_time
            );
            record
        })
        .collect();

    let mut rows = Vec::new();
    let mut offset = 0;
    for cell in &grid {
        let mut groups = Vec::new();
        for &algo in &cfg.algorithms {
            let runs = if algo.is_deterministic() { 1 } else { cfg.runs };
            let chunk = &records[offset..offset + runs];
            offset += runs;
            let mut values: Vec<f64> = Vec::with_capacity(cfg.runs);
            for r in chunk {
                match r.best_value {
                    Some(v) => values.push(v),
                    None => warn!(
                        "{label} C={} alpha={} delta={} {algo} seed={}: no feasible solution, run excluded",
                        cell.capacity, cell.alpha, cell.delta, r.seed
                    ),
                }
            }
            if algo.is_deterministic() && !values.is_empty() {
                // Replicated so it can be compared against the stochastic samples.
                values = vec![values[0]; cfg.runs];
            }
            groups.push(values);
        }
        let stat = if cfg.algorithms.len() >= 2 && groups.iter().all(|g| !g.is_empty()) {
            bonferroni_posthoc(&groups, SIGNIFICANCE)?
        } else {
            vec![Vec::new(); groups.len()]
        };
        for ((&algo, values), stat) in cfg.algorithms.iter().zip(&groups).zip(stat) {
            rows.push(SummaryRow {
                problem: label.clone(),
                cell: *cell,
                algorithm: algo,
                summary: summarize(values),
                stat,
                budget: cfg.budget,
            });
        }
    }
    Ok(ExperimentOutput { rows, records })
}
