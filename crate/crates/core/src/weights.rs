//! Uniform-interval random weights and tail bounds on `Pr[W(X) > C]`.
//!
//! Element `s` weighs `w(s) ~ Uniform[a(s) - δ, a(s) + δ]`, independently.
//! `W(X)` therefore has mean `E_W(X) = Σ a(s)` and variance `δ²|X| / 3`.
//! Two upper bounds on the violation probability are provided:
//!
//! * one-sided Chebyshev (Cantelli):
//!   `δ²|X| / (δ²|X| + 3 (C - E_W(X))²)`
//! * Chernoff, on the weights rescaled to `[0, 1]`, with slack ratio
//!   `u = (C - E_W(X)) / (δ|X|)`:
//!   `(e^u / (1 + u)^(1 + u))^(|X| / 2)`
//!
//! Both are clamped to `[0, 1]`.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::subset::Subset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundKind {
    Chebyshev,
    Chernoff,
}

impl BoundKind {
    pub fn name(self) -> &'static str {
        match self {
            BoundKind::Chebyshev => "chebyshev",
            BoundKind::Chernoff => "chernoff",
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "chebyshev" => Ok(BoundKind::Chebyshev),
            "chernoff" => Ok(BoundKind::Chernoff),
            other => Err(Error::InvalidArgument(format!("unknown bound kind `{other}`"))),
        }
    }
}

/// Expected weights, shared dispersion, capacity `C` and tolerance `α`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightModel {
    expected: Vec<f64>,
    dispersion: f64,
    capacity: f64,
    alpha: f64,
    /// Set when every expected weight equals this value.
    uniform: Option<f64>,
}

impl WeightModel {
    pub fn new(expected: Vec<f64>, dispersion: f64, capacity: f64, alpha: f64) -> Result<Self> {
        if !(dispersion.is_finite() && dispersion >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "dispersion must be finite and non-negative, got {dispersion}"
            )));
        }
        if !(capacity.is_finite() && capacity > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "capacity must be positive, got {capacity}"
            )));
        }
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "alpha must lie in (0, 1), got {alpha}"
            )));
        }
        if let Some((i, a)) = expected
            .iter()
            .enumerate()
            .find(|(_, a)| !(a.is_finite() && **a >= 0.0))
        {
            return Err(Error::InvalidArgument(format!(
                "expected weight of element {i} must be finite and non-negative, got {a}"
            )));
        }
        let min = expected.iter().copied().fold(f64::INFINITY, f64::min);
        if !expected.is_empty() && dispersion > min {
            return Err(Error::InvalidArgument(format!(
                "dispersion {dispersion} exceeds the smallest expected weight {min}"
            )));
        }
        if dispersion > 0.0 && expected.iter().any(|&a| a <= 0.0) {
            return Err(Error::InvalidArgument(
                "expected weights must be strictly positive when dispersion > 0".into(),
            ));
        }
        let uniform = match expected.first() {
            Some(&a) if expected.iter().all(|&b| b == a) => Some(a),
            _ => None,
        };
        Ok(WeightModel {
            expected,
            dispersion,
            capacity,
            alpha,
            uniform,
        })
    }

    /// Every element has expected weight `a`.
    pub fn uniform(n: usize, a: f64, dispersion: f64, capacity: f64, alpha: f64) -> Result<Self> {
        WeightModel::new(vec![a; n], dispersion, capacity, alpha)
    }

    pub fn len(&self) -> usize {
        self.expected.len()
    }

    pub fn is_empty(&self) -> bool {
        self.expected.is_empty()
    }

    pub fn expected(&self) -> &[f64] {
        &self.expected
    }

    pub fn dispersion(&self) -> f64 {
        self.dispersion
    }

    pub fn capacity(&self) -> f64 {
        self.capacity
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn uniform_weight(&self) -> Option<f64> {
        self.uniform
    }

    fn check_len(&self, x: &Subset) -> Result<()> {
        if x.len() != self.expected.len() {
            return Err(Error::InvalidArgument(format!(
                "subset over {} elements, weight model over {}",
                x.len(),
                self.expected.len()
            )));
        }
        Ok(())
    }

    /// `E_W(X) = Σ_{s ∈ X} a(s)`.
    pub fn expected_weight(&self, x: &Subset) -> Result<f64> {
        self.check_len(x)?;
        Ok(self.expected_weight_unchecked(x))
    }

    pub(crate) fn expected_weight_unchecked(&self, x: &Subset) -> f64 {
        debug_assert_eq!(x.len(), self.expected.len());
        match self.uniform {
            Some(a) => a * x.count() as f64,
            None => x.iter().map(|i| self.expected[i]).sum(),
        }
    }

    /// Cardinality and expected weight, the only quantities the bounds read.
    pub fn summarize(&self, x: &Subset) -> Result<WeightSummary> {
        self.check_len(x)?;
        Ok(self.summary_unchecked(x))
    }

    pub(crate) fn summary_unchecked(&self, x: &Subset) -> WeightSummary {
        WeightSummary {
            cardinality: x.count(),
            expected: self.expected_weight_unchecked(x),
        }
    }

    /// `(C - E_W(X)) ≥ δ|X|`: even the worst-case weight stays within `C`.
    pub fn certainly_feasible(&self, s: WeightSummary) -> bool {
        s.cardinality == 0 || self.capacity - s.expected >= self.dispersion * s.cardinality as f64
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeightSummary {
    pub cardinality: usize,
    pub expected: f64,
}

/// One-sided Chebyshev bound on `Pr[W(X) > C]`.
pub fn chebyshev_bound(x: &Subset, m: &WeightModel) -> Result<f64> {
    chebyshev_from_summary(m.summarize(x)?, m)
}

pub fn chebyshev_from_summary(s: WeightSummary, m: &WeightModel) -> Result<f64> {
    if s.cardinality == 0 {
        return Err(Error::Domain {
            bound: "chebyshev",
            reason: "empty set".into(),
        });
    }
    let slack = m.capacity - s.expected;
    if slack <= 0.0 {
        return Err(Error::Domain {
            bound: "chebyshev",
            reason: format!("expected weight {} is not below C = {}", s.expected, m.capacity),
        });
    }
    let spread = m.dispersion * m.dispersion * s.cardinality as f64;
    if spread == 0.0 {
        return Ok(0.0);
    }
    Ok((spread / (spread + 3.0 * slack * slack)).clamp(0.0, 1.0))
}

/// Chernoff bound on `Pr[W(X) > C]`, evaluated in log-space.
pub fn chernoff_bound(x: &Subset, m: &WeightModel) -> Result<f64> {
    chernoff_from_summary(m.summarize(x)?, m)
}

pub fn chernoff_from_summary(s: WeightSummary, m: &WeightModel) -> Result<f64> {
    if s.cardinality == 0 {
        return Err(Error::Domain {
            bound: "chernoff",
            reason: "empty set".into(),
        });
    }
    if m.dispersion == 0.0 {
        return Err(Error::Domain {
            bound: "chernoff",
            reason: "zero dispersion".into(),
        });
    }
    let slack = m.capacity - s.expected;
    if slack < 0.0 {
        return Err(Error::Domain {
            bound: "chernoff",
            reason: format!("expected weight {} exceeds C = {}", s.expected, m.capacity),
        });
    }
    let k = s.cardinality as f64;
    let u = slack / (m.dispersion * k);
    let log_bound = 0.5 * k * (u - (1.0 + u) * u.ln_1p());
    Ok(log_bound.exp().clamp(0.0, 1.0))
}

/// Surrogate for `Pr[W(X) > C]`: zero on certainly feasible sets, one when
/// `E_W(X) ≥ C`, otherwise the selected tail bound.
pub fn surrogate_violation_probability(x: &Subset, m: &WeightModel, kind: BoundKind) -> f64 {
    surrogate_from_summary(m.summary_unchecked(x), m, kind)
}

pub fn surrogate_from_summary(s: WeightSummary, m: &WeightModel, kind: BoundKind) -> f64 {
    if m.certainly_feasible(s) {
        return 0.0;
    }
    if s.expected >= m.capacity {
        return 1.0;
    }
    // Both bounds are defined here: |X| ≥ 1, E_W(X) < C and δ > 0.
    let bound = match kind {
        BoundKind::Chebyshev => chebyshev_from_summary(s, m),
        BoundKind::Chernoff => chernoff_from_summary(s, m),
    };
    bound.expect("tail bound evaluated inside its domain")
}

/// One draw of `W(X)`.
pub fn sample_weight<R: Rng + ?Sized>(x: &Subset, m: &WeightModel, rng: &mut R) -> f64 {
    let d = m.dispersion;
    if d == 0.0 {
        return m.expected_weight_unchecked(x);
    }
    x.iter()
        .map(|i| m.expected[i] + d * (2.0 * rng.random::<f64>() - 1.0))
        .sum()
}
