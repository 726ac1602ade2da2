//! Generational NSGA-II on (minimize o1, maximize o2).

use std::cmp::Ordering;
use std::time::Instant;

use rand::Rng;

use super::{standard_bit_mutation, AlgoConfig, AlgorithmKind, RunRecord};
use crate::fitness::{Formulation, ObjectivePair};
use crate::problems::ProblemInstance;
use crate::rng::{stream_rng, Stream};
use crate::subset::Subset;

#[derive(Clone, Debug)]
struct Individual {
    subset: Subset,
    pair: ObjectivePair,
}

/// Partitions `pairs` into non-dominated fronts, best first. Indices within
/// a front are ascending.
pub fn fast_non_dominated_sort(pairs: &[ObjectivePair]) -> Vec<Vec<usize>> {
    let n = pairs.len();
    let mut dominated_by: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut dominators = vec![0usize; n];
    for i in 0..n {
        for j in (i + 1)..n {
            if pairs[i].dominance_over(&pairs[j]).is_strong() {
                dominated_by[i].push(j);
                dominators[j] += 1;
            } else if pairs[j].dominance_over(&pairs[i]).is_strong() {
                dominated_by[j].push(i);
                dominators[i] += 1;
            }
        }
    }
    let mut fronts = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&i| dominators[i] == 0).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &i in &current {
            for &j in &dominated_by[i] {
                dominators[j] -= 1;
                if dominators[j] == 0 {
                    next.push(j);
                }
            }
        }
        next.sort_unstable();
        fronts.push(current);
        current = next;
    }
    fronts
}

/// Crowding distance of each member of `front` (same order). Boundary
/// points of either objective get `+∞`.
pub fn crowding_distance(front: &[usize], pairs: &[ObjectivePair]) -> Vec<f64> {
    let m = front.len();
    let mut distance = vec![0.0; m];
    if m <= 2 {
        return vec![f64::INFINITY; m];
    }
    let objectives: [fn(&ObjectivePair) -> f64; 2] = [|p| p.o1, |p| p.o2];
    for key in objectives {
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&a, &b| {
            key(&pairs[front[a]])
                .partial_cmp(&key(&pairs[front[b]]))
                .unwrap_or(Ordering::Equal)
        });
        let lo = key(&pairs[front[order[0]]]);
        let hi = key(&pairs[front[order[m - 1]]]);
        distance[order[0]] = f64::INFINITY;
        distance[order[m - 1]] = f64::INFINITY;
        if hi > lo {
            for w in 1..m - 1 {
                let prev = key(&pairs[front[order[w - 1]]]);
                let next = key(&pairs[front[order[w + 1]]]);
                distance[order[w]] += (next - prev) / (hi - lo);
            }
        }
    }
    distance
}

/// Rank and crowding distance of every individual.
fn rank_and_crowd(pairs: &[ObjectivePair]) -> (Vec<usize>, Vec<f64>, Vec<Vec<usize>>) {
    let fronts = fast_non_dominated_sort(pairs);
    let mut rank = vec![0; pairs.len()];
    let mut crowd = vec![0.0; pairs.len()];
    for (r, front) in fronts.iter().enumerate() {
        for (&i, d) in front.iter().zip(crowding_distance(front, pairs)) {
            rank[i] = r;
            crowd[i] = d;
        }
    }
    (rank, crowd, fronts)
}

/// Keeps `keep` individuals: whole fronts first, the last front truncated by
/// descending crowding distance.
fn environmental_selection(pool: Vec<Individual>, keep: usize) -> Vec<Individual> {
    let pairs: Vec<ObjectivePair> = pool.iter().map(|i| i.pair).collect();
    let (_, crowd, fronts) = rank_and_crowd(&pairs);
    let mut chosen = Vec::with_capacity(keep);
    for front in fronts {
        if chosen.len() + front.len() <= keep {
            chosen.extend(front);
        } else {
            let mut rest = front;
            rest.sort_by(|&a, &b| crowd[b].partial_cmp(&crowd[a]).unwrap_or(Ordering::Equal));
            rest.truncate(keep - chosen.len());
            chosen.extend(rest);
        }
        if chosen.len() == keep {
            break;
        }
    }
    let mut slots: Vec<Option<Individual>> = pool.into_iter().map(Some).collect();
    chosen
        .into_iter()
        .map(|i| slots[i].take().expect("selected once"))
        .collect()
}

fn uniform_crossover<R: Rng + ?Sized>(a: &Subset, b: &Subset, rng: &mut R) -> Subset {
    let mut child = a.clone();
    for i in 0..a.len() {
        let bit = b.contains(i);
        if a.contains(i) != bit && rng.random_bool(0.5) {
            child.flip(i);
        }
    }
    child
}

/// NSGA-II over `g`, stopping at the generation limit or the evaluation
/// budget, whichever comes first. Reports the best feasible set ever seen.
pub fn nsga2_run(problem: &mut ProblemInstance<'_>, cfg: &AlgoConfig) -> RunRecord {
    let start = Instant::now();
    let formulation = Formulation::G;
    let params = cfg.nsga2;
    let n = problem.n();
    let mut init_rng = stream_rng(cfg.seed, Stream::Initialization);
    let mut select_rng = stream_rng(cfg.seed, Stream::Selection);
    let mut mutate_rng = stream_rng(cfg.seed, Stream::Mutation);
    let mut cross_rng = stream_rng(cfg.seed, Stream::Crossover);

    let mut best: Option<(Subset, f64)> = None;
    let track = |ind: &Individual, best: &mut Option<(Subset, f64)>| {
        if ind.pair.is_feasible() && best.as_ref().is_none_or(|(_, v)| ind.pair.o2 > *v) {
            *best = Some((ind.subset.clone(), ind.pair.o2));
        }
    };

    let mut population = Vec::with_capacity(params.parents);
    while population.len() < params.parents && problem.evaluations() < cfg.budget {
        let subset = Subset::random(n, &mut init_rng);
        let pair = problem.evaluate(&subset, formulation);
        let ind = Individual { subset, pair };
        track(&ind, &mut best);
        population.push(ind);
    }

    let mut generation = 0u64;
    while generation < params.generations && problem.evaluations() < cfg.budget {
        let pairs: Vec<ObjectivePair> = population.iter().map(|i| i.pair).collect();
        let (rank, crowd, _) = rank_and_crowd(&pairs);
        let tournament = |rng: &mut rand_chacha::ChaCha8Rng| {
            let a = rng.random_range(0..population.len());
            let b = rng.random_range(0..population.len());
            let a_better = rank[a] < rank[b] || (rank[a] == rank[b] && crowd[a] >= crowd[b]);
            if a_better {
                a
            } else {
                b
            }
        };

        let mut offspring = Vec::with_capacity(params.offspring);
        for _ in 0..params.offspring {
            if problem.evaluations() >= cfg.budget {
                break;
            }
            let p1 = tournament(&mut select_rng);
            let p2 = tournament(&mut select_rng);
            let mut child = if cross_rng.random_bool(params.crossover_probability) {
                uniform_crossover(&population[p1].subset, &population[p2].subset, &mut cross_rng)
            } else {
                population[p1].subset.clone()
            };
            standard_bit_mutation(&mut child, &mut mutate_rng);
            let pair = problem.evaluate(&child, formulation);
            let ind = Individual { subset: child, pair };
            track(&ind, &mut best);
            offspring.push(ind);
        }

        let keep = params.parents.min(population.len() + offspring.len());
        population.extend(offspring);
        population = environmental_selection(population, keep);
        generation += 1;
    }

    RunRecord::new(AlgorithmKind::Nsga2, problem, best, cfg.seed, start.elapsed())
}
