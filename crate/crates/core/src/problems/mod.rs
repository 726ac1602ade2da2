//! Submodular objective oracles and the evaluation-counting problem wrapper.

mod coverage;
mod dimacs;
mod influence;

pub use coverage::{graph_to_coverage, CoverageInstance};
pub use dimacs::{load_dimacs, parse_dimacs_edges, UndirectedGraph};
pub use influence::{
    generate_im_graph, load_im_edges, parse_im_edges, CascadeSettings, InfluenceGraph,
    InfluenceInstance,
};

use crate::error::{Error, Result};
use crate::fitness::{evaluate_pair, g1_from_summary, Formulation, ObjectivePair};
use crate::subset::Subset;
use crate::weights::{BoundKind, WeightModel};

/// A monotone submodular set function `f: 2^V → ℝ≥0`.
pub trait SubmodularObjective: Send + Sync {
    /// `n = |V|`.
    fn ground_size(&self) -> usize;

    /// `f(X)`. `eval_index` identifies the evaluation for estimators that
    /// draw fresh randomness per call; exact objectives ignore it.
    fn value(&self, x: &Subset, eval_index: u64) -> f64;

    /// Value used when reporting a final solution. Estimators override this
    /// with a higher-precision, independent estimate.
    fn report_value(&self, x: &Subset) -> f64 {
        self.value(x, 0)
    }
}

/// Wraps a closure over a ground set of size `n`.
pub struct FnObjective<F> {
    n: usize,
    f: F,
}

impl<F> FnObjective<F>
where
    F: Fn(&Subset) -> f64 + Send + Sync,
{
    pub fn new(n: usize, f: F) -> Self {
        FnObjective { n, f }
    }
}

impl<F> SubmodularObjective for FnObjective<F>
where
    F: Fn(&Subset) -> f64 + Send + Sync,
{
    fn ground_size(&self) -> usize {
        self.n
    }

    fn value(&self, x: &Subset, _eval_index: u64) -> f64 {
        (self.f)(x)
    }
}

/// An objective together with its chance constraint, counting fitness
/// evaluations against a budget.
///
/// The counter is private to one run; the objective itself is shared.
pub struct ProblemInstance<'a> {
    objective: &'a dyn SubmodularObjective,
    weights: WeightModel,
    bound: BoundKind,
    evaluations: u64,
    label: String,
}

impl<'a> ProblemInstance<'a> {
    pub fn new(
        objective: &'a dyn SubmodularObjective,
        weights: WeightModel,
        bound: BoundKind,
    ) -> Result<Self> {
        if objective.ground_size() != weights.len() {
            return Err(Error::InvalidArgument(format!(
                "objective over {} elements, weight model over {}",
                objective.ground_size(),
                weights.len()
            )));
        }
        Ok(ProblemInstance {
            objective,
            weights,
            bound,
            evaluations: 0,
            label: String::new(),
        })
    }

    /// Problem identifier carried into run records.
    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &WeightModel {
        &self.weights
    }

    pub fn bound(&self) -> BoundKind {
        self.bound
    }

    pub fn objective(&self) -> &'a dyn SubmodularObjective {
        self.objective
    }

    pub fn evaluations(&self) -> u64 {
        self.evaluations
    }

    /// `g1(X)`; free.
    pub fn g1(&self, x: &Subset) -> f64 {
        g1_from_summary(self.weights.summary_unchecked(x), &self.weights, self.bound)
    }

    /// Surrogate feasibility `g1(X) ≤ α`; free.
    pub fn is_feasible(&self, x: &Subset) -> bool {
        self.g1(x) <= self.weights.alpha()
    }

    /// One fitness evaluation. `f` is only computed for feasible sets.
    pub fn evaluate(&mut self, x: &Subset, formulation: Formulation) -> ObjectivePair {
        let index = self.evaluations;
        self.evaluations += 1;
        let objective = self.objective;
        evaluate_pair(x, &self.weights, self.bound, formulation, || {
            objective.value(x, index)
        })
    }

    /// One raw evaluation of `f`, counted against the budget.
    pub fn value(&mut self, x: &Subset) -> f64 {
        let index = self.evaluations;
        self.evaluations += 1;
        self.objective.value(x, index)
    }

    /// Reporting-quality value of `f`, not counted.
    pub fn report_value(&self, x: &Subset) -> f64 {
        self.objective.report_value(x)
    }
}
