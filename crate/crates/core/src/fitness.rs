//! Bi-objective fitness `g = (g1, g2)` and `ĝ = (ĝ1, g2)`.
//!
//! `g1` (minimized) measures how tight a set is against the chance
//! constraint; `ĝ1 = E_W(X)` is the plain expected weight. `g2` (maximized)
//! is `f(X)` on feasible sets and `-1` otherwise.

use std::fmt;

use crate::error::{Error, Result};
use crate::subset::Subset;
use crate::weights::{surrogate_from_summary, BoundKind, WeightModel, WeightSummary};

/// Value of `g2` on infeasible sets.
pub const INFEASIBLE: f64 = -1.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Formulation {
    /// `(g1, g2)`: tail-bound tightness against quality.
    #[default]
    G,
    /// `(ĝ1, g2)`: expected weight against quality.
    GHat,
}

impl fmt::Display for Formulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Formulation::G => "g",
            Formulation::GHat => "g-hat",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ObjectivePair {
    /// Minimized.
    pub o1: f64,
    /// Maximized.
    pub o2: f64,
    pub formulation: Formulation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dominance {
    None,
    Weak,
    Strong,
}

impl Dominance {
    pub fn is_weak(self) -> bool {
        self != Dominance::None
    }

    pub fn is_strong(self) -> bool {
        self == Dominance::Strong
    }
}

impl ObjectivePair {
    pub fn is_feasible(&self) -> bool {
        self.o2 != INFEASIBLE
    }

    /// How `self` relates to `other`, without checking formulation tags.
    #[inline]
    pub fn dominance_over(&self, other: &ObjectivePair) -> Dominance {
        debug_assert_eq!(self.formulation, other.formulation);
        if self.o1 <= other.o1 && self.o2 >= other.o2 {
            if self.o1 == other.o1 && self.o2 == other.o2 {
                Dominance::Weak
            } else {
                Dominance::Strong
            }
        } else {
            Dominance::None
        }
    }
}

/// Dominance of `y` over `x`. Pairs from different formulations are not comparable.
pub fn dominates(y: &ObjectivePair, x: &ObjectivePair) -> Result<Dominance> {
    if y.formulation != x.formulation {
        return Err(Error::InvalidArgument(format!(
            "cannot compare a {} pair with a {} pair",
            y.formulation, x.formulation
        )));
    }
    Ok(y.dominance_over(x))
}

pub fn g1_from_summary(s: WeightSummary, m: &WeightModel, kind: BoundKind) -> f64 {
    let c = m.capacity();
    if m.certainly_feasible(s) {
        s.expected - c
    } else if s.expected >= c {
        1.0 + (s.expected - c)
    } else {
        surrogate_from_summary(s, m, kind)
    }
}

/// Three-case tightness objective; the empty set falls in the
/// certainly-feasible case with value `-C`.
pub fn eval_g1(x: &Subset, m: &WeightModel, kind: BoundKind) -> f64 {
    g1_from_summary(m.summary_unchecked(x), m, kind)
}

/// `f(X)` when `g1(X) ≤ α`, else `-1`.
pub fn eval_g2(f_value: f64, g1_value: f64, alpha: f64) -> f64 {
    if g1_value <= alpha {
        f_value
    } else {
        INFEASIBLE
    }
}

/// `ĝ1(X) = E_W(X)`.
pub fn eval_g1_hat(x: &Subset, m: &WeightModel) -> f64 {
    m.expected_weight_unchecked(x)
}

/// Evaluates a set under `formulation`. `f` is only called when the set is
/// feasible; the returned flag reports whether it was.
pub fn evaluate_pair(
    x: &Subset,
    m: &WeightModel,
    kind: BoundKind,
    formulation: Formulation,
    f: impl FnOnce() -> f64,
) -> ObjectivePair {
    let s = m.summary_unchecked(x);
    let g1 = g1_from_summary(s, m, kind);
    let o2 = if g1 <= m.alpha() { f() } else { INFEASIBLE };
    let o1 = match formulation {
        Formulation::G => g1,
        Formulation::GHat => s.expected,
    };
    ObjectivePair { o1, o2, formulation }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pair(o1: f64, o2: f64) -> ObjectivePair {
        ObjectivePair {
            o1,
            o2,
            formulation: Formulation::G,
        }
    }

    fn model(delta: f64) -> WeightModel {
        WeightModel::uniform(40, 1.0, delta, 20.0, 0.1).unwrap()
    }

    #[test]
    fn g1_cases() {
        let m = model(0.5);
        assert_eq!(eval_g1(&Subset::empty(40), &m, BoundKind::Chebyshev), -20.0);
        assert_eq!(eval_g1(&Subset::from_indices(40, 0..25), &m, BoundKind::Chebyshev), 6.0);
        let g = eval_g1(&Subset::from_indices(40, 0..16), &m, BoundKind::Chebyshev);
        assert!((g - 1.0 / 13.0).abs() < 1e-12);
        // Boundary of the certain region: 20 - 13 = 6.5 ≥ 0.5 · 13.
        assert_eq!(eval_g1(&Subset::from_indices(40, 0..13), &m, BoundKind::Chernoff), -7.0);
        // E_W = C exactly.
        assert_eq!(eval_g1(&Subset::from_indices(40, 0..20), &m, BoundKind::Chernoff), 1.0);
    }

    #[test]
    fn g2_cases() {
        assert_eq!(eval_g2(0.0, -20.0, 0.1), 0.0);
        assert_eq!(eval_g2(300.0, 0.61, 0.1), -1.0);
        assert_eq!(eval_g2(300.0, 0.02, 0.1), 300.0);
    }

    #[test]
    fn g1_hat_cases() {
        let m = model(0.5);
        assert_eq!(eval_g1_hat(&Subset::empty(40), &m), 0.0);
        assert_eq!(eval_g1_hat(&Subset::from_indices(40, 0..7), &m), 7.0);
        let m = WeightModel::new(vec![2.0, 3.0], 0.0, 10.0, 0.1).unwrap();
        assert_eq!(eval_g1_hat(&Subset::full(2), &m), 5.0);
    }

    #[test]
    fn dominance_table() {
        assert_eq!(dominates(&pair(0.02, 300.0), &pair(0.61, -1.0)).unwrap(), Dominance::Strong);
        assert_eq!(dominates(&pair(0.02, 300.0), &pair(0.02, 300.0)).unwrap(), Dominance::Weak);
        assert_eq!(dominates(&pair(0.02, 300.0), &pair(0.01, 310.0)).unwrap(), Dominance::None);
        let hat = ObjectivePair {
            formulation: Formulation::GHat,
            ..pair(0.0, 0.0)
        };
        assert!(dominates(&hat, &pair(0.0, 0.0)).is_err());
    }

    #[test]
    fn lazy_f_skipped_on_infeasible() {
        let m = model(0.5);
        let x = Subset::from_indices(40, 0..19);
        let p = evaluate_pair(&x, &m, BoundKind::Chebyshev, Formulation::G, || panic!("f called"));
        assert_eq!(p.o2, INFEASIBLE);
        let p = evaluate_pair(&x, &m, BoundKind::Chebyshev, Formulation::GHat, || panic!("f called"));
        assert_eq!(p.o1, 19.0);
    }

    proptest! {
        #[test]
        fn g1_depends_only_on_cardinality_and_is_strictly_increasing(
            delta in 0.0f64..1.0, c in 1.0f64..40.0, a in 0usize..40, b in 0usize..40, alpha in 0.001f64..0.5,
        ) {
            let m = WeightModel::uniform(40, 1.0, delta, c, alpha).unwrap();
            for kind in [BoundKind::Chebyshev, BoundKind::Chernoff] {
                let x = Subset::from_indices(40, 0..a);
                let y = Subset::from_indices(40, (40 - a)..40);
                prop_assert_eq!(eval_g1(&x, &m, kind), eval_g1(&y, &m, kind));
                let z = Subset::from_indices(40, 0..b);
                if a < b {
                    prop_assert!(eval_g1(&x, &m, kind) < eval_g1(&z, &m, kind), "{} {} {:?}", a, b, kind);
                }
            }
        }

        #[test]
        fn feasible_strongly_dominates_infeasible(
            k in 0usize..40, j in 0usize..40, f in 0.0f64..1000.0, h in 0.0f64..1000.0,
        ) {
            let m = model(1.0);
            let x = Subset::from_indices(40, 0..k);
            let z = Subset::from_indices(40, 0..j);
            let px = evaluate_pair(&x, &m, BoundKind::Chebyshev, Formulation::G, || f);
            let pz = evaluate_pair(&z, &m, BoundKind::Chebyshev, Formulation::G, || h);
            if px.is_feasible() && !pz.is_feasible() {
                prop_assert_eq!(px.dominance_over(&pz), Dominance::Strong);
            }
            prop_assert!(!(px.o2 > -1.0 && px.o2 < 0.0));
        }

        #[test]
        fn dominance_is_a_preorder(
            v in proptest::collection::vec((0i32..4, 0i32..4), 3),
        ) {
            let p: Vec<_> = v.iter().map(|&(a, b)| pair(a as f64, b as f64)).collect();
            for a in &p {
                prop_assert_eq!(a.dominance_over(a), Dominance::Weak);
            }
            let (a, b, c) = (&p[0], &p[1], &p[2]);
            if a.dominance_over(b).is_weak() && b.dominance_over(c).is_weak() {
                prop_assert!(a.dominance_over(c).is_weak());
            }
            if a.dominance_over(b).is_strong() && b.dominance_over(c).is_strong() {
                prop_assert!(a.dominance_over(c).is_strong());
            }
        }
    }
}
