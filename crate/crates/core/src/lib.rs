//! Maximization of monotone submodular functions under chance constraints.
//!
//! Every element of the ground set carries a random weight drawn uniformly
//! from `[a(s) - δ, a(s) + δ]`. A subset `X` is feasible when
//! `Pr[W(X) > C] ≤ α`; since that probability is expensive to compute, it is
//! replaced by a Chebyshev or Chernoff tail bound ([`weights`]).
//!
//! On top of the bounds the crate provides the bi-objective fitness
//! formulations used to drive Pareto-archive search ([`fitness`]), the
//! objective oracles for maximum coverage and influence maximization
//! ([`problems`]), GSEMO, NSGA-II and the cost-benefit greedy baseline
//! ([`algorithms`]), and an exhaustive/Monte-Carlo ground-truth module for
//! small instances ([`oracle`]).

pub mod algorithms;
pub mod error;
pub mod fitness;
pub mod oracle;
pub mod problems;
pub mod rng;
pub mod subset;
pub mod weights;

pub use error::{Error, Result};
pub use fitness::{Dominance, Formulation, ObjectivePair};
pub use problems::{ProblemInstance, SubmodularObjective};
pub use subset::Subset;
pub use weights::{BoundKind, WeightModel};
