use std::time::Instant;

use super::{AlgorithmKind, RunRecord};
use crate::problems::ProblemInstance;
use crate::subset::Subset;

/// Generalized cost-benefit greedy with a best-singleton fallback.
///
/// Starting from `∅`, repeatedly adds the element with the largest
/// `(f(X ∪ {v}) - f(X)) / a(v)` among those whose addition keeps the set
/// surrogate-feasible, until no such element remains. Ties go to the lowest
/// index. Returns whichever of the greedy set and the best feasible
/// singleton has the larger `f`.
pub fn greedy_run(problem: &mut ProblemInstance<'_>) -> RunRecord {
    let start = Instant::now();
    let n = problem.n();
    let costs: Vec<f64> = problem.weights().expected().to_vec();

    let mut current = Subset::empty(n);
    let mut current_value = 0.0;
    let mut best_singleton: Option<(usize, f64)> = None;
    let mut first_round = true;

    loop {
        let mut choice: Option<(usize, f64, f64)> = None;
        for (v, &cost) in costs.iter().enumerate() {
            if current.contains(v) {
                continue;
            }
            let candidate = current.with(v);
            if !problem.is_feasible(&candidate) {
                continue;
            }
            let value = problem.value(&candidate);
            if first_round && best_singleton.is_none_or(|(_, b)| value > b) {
                best_singleton = Some((v, value));
            }
            let gain = value - current_value;
            let score = if cost > 0.0 {
                gain / cost
            } else if gain > 0.0 {
                f64::INFINITY
            } else {
                0.0
            };
            if choice.is_none_or(|(_, s, _)| score > s) {
                choice = Some((v, score, value));
            }
        }
        first_round = false;
        match choice {
            Some((v, _, value)) => {
                current.insert(v);
                current_value = value;
            }
            None => break,
        }
    }

    let best = match best_singleton {
        Some((v, value)) if value > current_value => Some((Subset::from_indices(n, [v]), value)),
        _ if problem.is_feasible(&current) => Some((current, current_value)),
        _ => None,
    };
    RunRecord::new(AlgorithmKind::Greedy, problem, best, 0, start.elapsed())
}
