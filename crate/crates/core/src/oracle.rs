//! Ground truth for small instances: exhaustive optimization and Monte-Carlo
//! estimation of the true violation probability.

use crate::error::{Error, Result};
use crate::problems::SubmodularObjective;
use crate::rng::{stream_rng, Stream};
use crate::subset::Subset;
use crate::weights::{sample_weight, BoundKind, WeightModel};

/// Largest ground set [`brute_force_optimum`] will enumerate.
pub const MAX_ENUMERATION: usize = 24;

#[derive(Clone, Debug, PartialEq)]
pub struct OracleResult {
    pub optimum: f64,
    /// Lowest-mask subset attaining the optimum.
    pub subset: Subset,
    pub feasible_count: u64,
    pub enumerated: u64,
}

/// Maximum of `f` over all surrogate-feasible subsets (`g1(X) ≤ α`).
///
/// Sets with `E_W(X) ≥ C` are infeasible regardless of the bound, so `f` is
/// only evaluated on the remaining candidates.
pub fn brute_force_optimum(
    objective: &dyn SubmodularObjective,
    m: &WeightModel,
    kind: BoundKind,
) -> Result<OracleResult> {
    let n = objective.ground_size();
    if n > MAX_ENUMERATION {
        return Err(Error::TooLarge {
            n,
            max: MAX_ENUMERATION,
        });
    }
    if m.len() != n {
        return Err(Error::InvalidArgument(format!(
            "objective over {n} elements, weight model over {}",
            m.len()
        )));
    }
    let alpha = m.alpha();
    let total = 1u64 << n;
    let mut best: Option<(f64, u64)> = None;
    let mut feasible = 0u64;
    for mask in 0..total {
        let x = Subset::from_mask(n, mask);
        if crate::fitness::eval_g1(&x, m, kind) > alpha {
            continue;
        }
        feasible += 1;
        let value = objective.value(&x, 0);
        if best.is_none_or(|(b, _)| value > b) {
            best = Some((value, mask));
        }
    }
    // The empty set is always feasible, so `best` is set.
    let (optimum, mask) = best.expect("empty set is feasible");
    Ok(OracleResult {
        optimum,
        subset: Subset::from_mask(n, mask),
        feasible_count: feasible,
        enumerated: total,
    })
}

/// Fraction of `samples` draws of `W(X)` exceeding `C`.
pub fn empirical_violation_probability(x: &Subset, m: &WeightModel, samples: u64, seed: u64) -> f64 {
    assert!(samples >= 1, "at least one sample is required");
    let mut rng = stream_rng(seed, Stream::Sampling);
    let c = m.capacity();
    let hits = (0..samples)
        .filter(|_| sample_weight(x, m, &mut rng) > c)
        .count();
    hits as f64 / samples as f64
}
