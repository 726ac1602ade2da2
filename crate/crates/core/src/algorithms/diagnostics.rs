//! Certified-feasible sizes for the uniform-interval weight model.

use crate::error::{Error, Result};
use crate::weights::{BoundKind, WeightModel};

/// Largest `k` such that `k` elements of uniform expected weight `a` are
/// guaranteed to be feasible under the given bound:
///
/// * Chebyshev: `k + √((1-α) k δ²) / (√(3α) a) ≤ ⌊C/a⌋`
/// * Chernoff:  `k + √(3 δ k ln(1/α)) / a ≤ ⌊C/a⌋`
///
/// Returns 0 when no `k ≥ 1` qualifies.
pub fn max_safe_cardinality(m: &WeightModel, kind: BoundKind) -> Result<usize> {
    let a = m.uniform_weight().ok_or_else(|| {
        Error::InvalidArgument("safe cardinality needs uniform expected weights".into())
    })?;
    if a <= 0.0 {
        return Err(Error::InvalidArgument("expected weight must be positive".into()));
    }
    let alpha = m.alpha();
    let delta = m.dispersion();
    let k_opt = (m.capacity() / a).floor() as usize;
    let penalty = |k: f64| match kind {
        BoundKind::Chebyshev => ((1.0 - alpha) * k * delta * delta).sqrt() / ((3.0 * alpha).sqrt() * a),
        BoundKind::Chernoff => (3.0 * delta * k * (1.0 / alpha).ln()).sqrt() / a,
    };
    // The left-hand side is increasing in k, so the admissible set is a prefix.
    Ok((1..=k_opt)
        .take_while(|&k| k as f64 + penalty(k as f64) <= k_opt as f64)
        .last()
        .unwrap_or(0))
}

/// Lower bound on the largest expected weight deemed feasible for a set of
/// `r` elements: `C - √((1-α) r δ² / (3α))` (Chebyshev) or
/// `C - √(3 δ r ln(1/α))` (Chernoff).
pub fn max_safe_expected_weight(r: usize, m: &WeightModel, kind: BoundKind) -> f64 {
    let (alpha, delta, r) = (m.alpha(), m.dispersion(), r as f64);
    let penalty = match kind {
        BoundKind::Chebyshev => ((1.0 - alpha) * r * delta * delta / (3.0 * alpha)).sqrt(),
        BoundKind::Chernoff => (3.0 * delta * r * (1.0 / alpha).ln()).sqrt(),
    };
    m.capacity() - penalty
}
