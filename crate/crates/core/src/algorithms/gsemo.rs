use std::time::Instant;

use rand::Rng;

use super::{standard_bit_mutation, AlgoConfig, AlgorithmKind, Archive, RunRecord};
use crate::fitness::Formulation;
use crate::problems::ProblemInstance;
use crate::rng::{stream_rng, Stream};
use crate::subset::Subset;

/// GSEMO until the evaluation budget is spent.
pub fn gsemo_run(
    problem: &mut ProblemInstance<'_>,
    cfg: &AlgoConfig,
    formulation: Formulation,
) -> RunRecord {
    gsemo_run_observed(problem, cfg, formulation, |_, _| {})
}

/// GSEMO with a callback invoked after every offspring evaluation with the
/// archive and the number of evaluations used so far.
pub fn gsemo_run_observed(
    problem: &mut ProblemInstance<'_>,
    cfg: &AlgoConfig,
    formulation: Formulation,
    mut observe: impl FnMut(&Archive, u64),
) -> RunRecord {
    let start = Instant::now();
    let n = problem.n();
    let mut init_rng = stream_rng(cfg.seed, Stream::Initialization);
    let mut select_rng = stream_rng(cfg.seed, Stream::Selection);
    let mut mutate_rng = stream_rng(cfg.seed, Stream::Mutation);

    let mut archive = Archive::new(formulation);
    let x = Subset::random(n, &mut init_rng);
    let pair = problem.evaluate(&x, formulation);
    archive.insert(x, pair);
    observe(&archive, problem.evaluations());

    while problem.evaluations() < cfg.budget {
        let pick = select_rng.random_range(0..archive.len());
        let mut y = archive.entries()[pick].subset.clone();
        standard_bit_mutation(&mut y, &mut mutate_rng);
        let pair = problem.evaluate(&y, formulation);
        archive.insert(y, pair);
        observe(&archive, problem.evaluations());
    }

    let best = archive
        .best_feasible()
        .map(|e| (e.subset.clone(), e.pair.o2));
    RunRecord::new(AlgorithmKind::Gsemo, problem, best, cfg.seed, start.elapsed())
}
