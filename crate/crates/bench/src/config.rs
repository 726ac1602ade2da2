//! Experiment configuration: a flat TOML file, overridable from the CLI.
//!
//! ```toml
//! problem = "coverage"          # or "im"
//! graph = "data/frb30-15-01.clq"
//! capacities = [10, 15, 20]
//! alphas = [0.1, 0.001]
//! deltas = [0.5, 1.0]
//! algorithms = ["GA", "GSEMO", "NSGA-II"]
//! runs = 30
//! budget = 5000000
//! seed = 0
//! bound = "auto"                # auto | chebyshev | chernoff
//! out = "results"
//! jsonl = false
//! label = "frb30-15-01"
//! # influence maximization without a graph file
//! im_nodes = 400
//! im_edges = 1594
//! im_p = 0.1
//! simulations = 100
//! report_simulations = 10000
//! crn = true
//! ```

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use ccsub_core::algorithms::AlgorithmKind;
use ccsub_core::BoundKind;
use serde::Deserialize;

use crate::error::{BenchError, Result};

/// Which surrogate bound each grid cell uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum BoundPolicy {
    /// Chebyshev for `α ≥ 0.01`, Chernoff below.
    #[default]
    Auto,
    Fixed(BoundKind),
}

impl BoundPolicy {
    pub fn for_alpha(self, alpha: f64) -> BoundKind {
        match self {
            BoundPolicy::Fixed(kind) => kind,
            BoundPolicy::Auto if alpha >= 0.01 => BoundKind::Chebyshev,
            BoundPolicy::Auto => BoundKind::Chernoff,
        }
    }
}

impl FromStr for BoundPolicy {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(BoundPolicy::Auto);
        }
        s.parse()
            .map(BoundPolicy::Fixed)
            .map_err(|_| BenchError::Config(format!("unknown bound policy `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProblemKind {
    Coverage,
    Influence,
}

impl FromStr for ProblemKind {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "coverage" | "mcp" | "maxcover" => Ok(ProblemKind::Coverage),
            "im" | "influence" => Ok(ProblemKind::Influence),
            _ => Err(BenchError::Config(format!("unknown problem `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ProblemSpec {
    /// DIMACS or edge-pair graph turned into closed-neighbourhood sets.
    Coverage { graph: PathBuf },
    /// Directed "u v p" edge file.
    InfluenceFile { graph: PathBuf },
    /// Seeded random directed graph with a shared edge probability.
    InfluenceGenerated { nodes: usize, edges: usize, p: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub problem: ProblemSpec,
    pub label: Option<String>,
    pub capacities: Vec<f64>,
    pub alphas: Vec<f64>,
    pub deltas: Vec<f64>,
    pub algorithms: Vec<AlgorithmKind>,
    pub runs: usize,
    pub budget: u64,
    pub seed: u64,
    pub bound: BoundPolicy,
    pub simulations: usize,
    pub report_simulations: usize,
    pub common_random_numbers: bool,
    pub out: Option<PathBuf>,
    pub jsonl: bool,
}

impl ExperimentConfig {
    pub fn new(problem: ProblemSpec) -> Self {
        let capacities = match problem {
            ProblemSpec::Coverage { .. } => vec![10.0, 15.0, 20.0],
            _ => vec![20.0, 50.0, 100.0],
        };
        ExperimentConfig {
            problem,
            label: None,
            capacities,
            alphas: vec![0.1, 0.001],
            deltas: vec![0.5, 1.0],
            algorithms: vec![AlgorithmKind::Greedy, AlgorithmKind::Gsemo, AlgorithmKind::Nsga2],
            runs: 30,
            budget: 5_000_000,
            seed: 0,
            bound: BoundPolicy::Auto,
            simulations: 100,
            report_simulations: 10_000,
            common_random_numbers: true,
            out: None,
            jsonl: false,
        }
    }

    /// Short budgets for quick checks: 10⁵ evaluations, 10 runs.
    pub fn desk_scale(mut self) -> Self {
        self.budget = 100_000;
        self.runs = 10;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: &str| Err(BenchError::Config(msg.to_string()));
        if self.algorithms.is_empty() {
            return fail("no algorithms selected");
        }
        if self.runs == 0 {
            return fail("runs must be at least 1");
        }
        if self.budget == 0 {
            return fail("budget must be at least 1");
        }
        if self.capacities.is_empty() || self.alphas.is_empty() || self.deltas.is_empty() {
            return fail("capacity, alpha and delta grids must be nonempty");
        }
        if self.capacities.iter().any(|&c| !(c > 0.0 && c.is_finite())) {
            return fail("capacities must be positive");
        }
        if self.alphas.iter().any(|&a| !(a > 0.0 && a < 1.0)) {
            return fail("alpha values must lie in (0, 1)");
        }
        if self.deltas.iter().any(|&d| !(d >= 0.0 && d.is_finite())) {
            return fail("delta values must be non-negative");
        }
        if self.simulations == 0 || self.report_simulations == 0 {
            return fail("simulation counts must be at least 1");
        }
        if let ProblemSpec::InfluenceGenerated { nodes, edges, p } = self.problem {
            if nodes < 2 || edges > nodes * (nodes - 1) || !(0.0..=1.0).contains(&p) {
                return fail("invalid generator parameters");
            }
        }
        Ok(())
    }

    /// Name used in reports.
    pub fn problem_label(&self) -> String {
        if let Some(label) = &self.label {
            return label.clone();
        }
        match &self.problem {
            ProblemSpec::Coverage { graph } | ProblemSpec::InfluenceFile { graph } => graph
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| graph.display().to_string()),
            ProblemSpec::InfluenceGenerated { nodes, edges, .. } => format!("im-{nodes}-{edges}"),
        }
    }
}

/// Raw file contents; every key optional.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub problem: Option<String>,
    pub graph: Option<PathBuf>,
    pub label: Option<String>,
    pub capacities: Option<Vec<f64>>,
    pub alphas: Option<Vec<f64>>,
    pub deltas: Option<Vec<f64>>,
    pub algorithms: Option<Vec<String>>,
    pub runs: Option<usize>,
    pub budget: Option<u64>,
    pub seed: Option<u64>,
    pub bound: Option<String>,
    pub out: Option<PathBuf>,
    pub jsonl: Option<bool>,
    pub im_nodes: Option<usize>,
    pub im_edges: Option<usize>,
    pub im_p: Option<f64>,
    pub simulations: Option<usize>,
    pub report_simulations: Option<usize>,
    pub crn: Option<bool>,
    pub desk_scale: Option<bool>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| BenchError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(toml::from_str(text)?)
    }

    /// Fields of `other` that are set replace those of `self`.
    pub fn merge(self, other: FileConfig) -> FileConfig {
        macro_rules! pick {
            ($($f:ident),*) => { FileConfig { $($f: other.$f.or(self.$f)),* } };
        }
        pick!(
            problem, graph, label, capacities, alphas, deltas, algorithms, runs, budget, seed,
            bound, out, jsonl, im_nodes, im_edges, im_p, simulations, report_simulations, crn,
            desk_scale
        )
    }

    pub fn resolve(self) -> Result<ExperimentConfig> {
        let kind = match &self.problem {
            Some(p) => p.parse()?,
            None if self.graph.is_some() => ProblemKind::Coverage,
            None => ProblemKind::Influence,
        };
        let problem = match (kind, self.graph) {
            (ProblemKind::Coverage, Some(graph)) => ProblemSpec::Coverage { graph },
            (ProblemKind::Coverage, None) => {
                return Err(BenchError::Config("coverage problems need a graph file".into()))
            }
            (ProblemKind::Influence, Some(graph)) => ProblemSpec::InfluenceFile { graph },
            (ProblemKind::Influence, None) => ProblemSpec::InfluenceGenerated {
                nodes: self.im_nodes.unwrap_or(400),
                edges: self.im_edges.unwrap_or(1594),
                p: self.im_p.unwrap_or(0.1),
            },
        };
        let mut cfg = ExperimentConfig::new(problem);
        if self.desk_scale == Some(true) {
            cfg = cfg.desk_scale();
        }
        cfg.label = self.label;
        if let Some(v) = self.capacities {
            cfg.capacities = v;
        }
        if let Some(v) = self.alphas {
            cfg.alphas = v;
        }
        if let Some(v) = self.deltas {
            cfg.deltas = v;
        }
        if let Some(names) = self.algorithms {
            cfg.algorithms = names
                .iter()
                .map(|n| n.parse::<AlgorithmKind>())
                .collect::<Result<_, _>>()?;
            cfg.algorithms.sort();
            cfg.algorithms.dedup();
        }
        if let Some(v) = self.runs {
            cfg.runs = v;
        }
        if let Some(v) = self.budget {
            cfg.budget = v;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = self.bound {
            cfg.bound = v.parse()?;
        }
        if let Some(v) = self.simulations {
            cfg.simulations = v;
        }
        if let Some(v) = self.report_simulations {
            cfg.report_simulations = v;
        }
        if let Some(v) = self.crn {
            cfg.common_random_numbers = v;
        }
        cfg.out = self.out;
        cfg.jsonl = self.jsonl.unwrap_or(false);
        cfg.validate()?;
        Ok(cfg)
    }
}
