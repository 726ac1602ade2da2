//! GSEMO, NSGA-II and the cost-benefit greedy baseline.

mod archive;
mod diagnostics;
mod greedy;
mod gsemo;
mod nsga2;

pub use archive::{Archive, ArchiveEntry};
pub use diagnostics::{max_safe_cardinality, max_safe_expected_weight};
pub use greedy::greedy_run;
pub use gsemo::{gsemo_run, gsemo_run_observed};
pub use nsga2::{crowding_distance, fast_non_dominated_sort, nsga2_run};

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use rand::Rng;

use crate::error::{Error, Result};
use crate::problems::ProblemInstance;
use crate::subset::Subset;
use crate::weights::BoundKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgorithmKind {
    Greedy,
    Gsemo,
    Nsga2,
}

impl AlgorithmKind {
    pub fn name(self) -> &'static str {
        match self {
            AlgorithmKind::Greedy => "GA",
            AlgorithmKind::Gsemo => "GSEMO",
            AlgorithmKind::Nsga2 => "NSGA-II",
        }
    }

    pub fn is_deterministic(self) -> bool {
        self == AlgorithmKind::Greedy
    }
}

impl fmt::Display for AlgorithmKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgorithmKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "ga" | "greedy" => Ok(AlgorithmKind::Greedy),
            "gsemo" => Ok(AlgorithmKind::Gsemo),
            "nsga2" | "nsgaii" => Ok(AlgorithmKind::Nsga2),
            _ => Err(Error::InvalidArgument(format!("unknown algorithm `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Nsga2Params {
    pub parents: usize,
    pub offspring: usize,
    pub crossover_probability: f64,
    pub generations: u64,
}

impl Default for Nsga2Params {
    fn default() -> Self {
        Nsga2Params {
            parents: 20,
            offspring: 10,
            crossover_probability: 0.9,
            generations: 500_000,
        }
    }
}

/// Run parameters. Mutation always flips each bit with probability `1/n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlgoConfig {
    pub budget: u64,
    pub seed: u64,
    pub nsga2: Nsga2Params,
}

impl Default for AlgoConfig {
    fn default() -> Self {
        AlgoConfig {
            budget: 5_000_000,
            seed: 0,
            nsga2: Nsga2Params::default(),
        }
    }
}

impl AlgoConfig {
    pub fn validate(&self) -> Result<()> {
        if self.budget == 0 {
            return Err(Error::InvalidArgument("evaluation budget must be at least 1".into()));
        }
        if self.nsga2.parents < 2 || self.nsga2.offspring < 2 {
            return Err(Error::InvalidArgument(
                "NSGA-II populations must hold at least 2 individuals".into(),
            ));
        }
        if !(0.0..=1.0).contains(&self.nsga2.crossover_probability) {
            return Err(Error::InvalidArgument("crossover probability outside [0, 1]".into()));
        }
        Ok(())
    }
}

/// Outcome of one algorithm run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunRecord {
    pub algorithm: AlgorithmKind,
    pub problem: String,
    pub capacity: f64,
    pub alpha: f64,
    pub delta: f64,
    pub bound: BoundKind,
    /// Reporting-quality `f` of the best surrogate-feasible set; `None` when
    /// no feasible set was found.
    pub best_value: Option<f64>,
    /// `f` of the same set as seen during search.
    pub search_value: Option<f64>,
    pub best_subset: Option<Subset>,
    pub evaluations: u64,
    pub seed: u64,
    pub wall_time: Duration,
}

impl RunRecord {
    pub(crate) fn new(
        algorithm: AlgorithmKind,
        problem: &ProblemInstance<'_>,
        best: Option<(Subset, f64)>,
        seed: u64,
        wall_time: Duration,
    ) -> Self {
        let m = problem.weights();
        let (best_value, search_value, best_subset) = match best {
            Some((x, search)) => (Some(problem.report_value(&x)), Some(search), Some(x)),
            None => (None, None, None),
        };
        RunRecord {
            algorithm,
            problem: problem.label().to_string(),
            capacity: m.capacity(),
            alpha: m.alpha(),
            delta: m.dispersion(),
            bound: problem.bound(),
            best_value,
            search_value,
            best_subset,
            evaluations: problem.evaluations(),
            seed,
            wall_time,
        }
    }
}

/// Standard bit mutation: each bit flips independently with probability `1/n`.
/// Flip positions are generated by geometric skips.
pub(crate) fn standard_bit_mutation<R: Rng + ?Sized>(x: &mut Subset, rng: &mut R) {
    let n = x.len();
    if n == 0 {
        return;
    }
    if n == 1 {
        x.flip(0);
        return;
    }
    let log_keep = (1.0 - 1.0 / n as f64).ln();
    let mut i = 0usize;
    loop {
        let u: f64 = rng.random();
        let skip = ((1.0 - u).ln() / log_keep).floor();
        if skip >= (n - i) as f64 {
            break;
        }
        i += skip as usize;
        x.flip(i);
        i += 1;
        if i >= n {
            break;
        }
    }
}
