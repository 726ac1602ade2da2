use crate::error::{Error, Result};
use crate::problems::SubmodularObjective;
use crate::subset::Subset;

/// Maximum coverage: `f(X) = |⋃_{S_i ∈ X} S_i|` over a universe `U`.
///
/// Sets are stored as packed bit rows of `stride` words each.
#[derive(Clone, Debug)]
pub struct CoverageInstance {
    universe: usize,
    stride: usize,
    rows: Vec<u64>,
    sets: usize,
}

impl CoverageInstance {
    pub fn new(universe: usize, sets: &[Vec<usize>]) -> Result<Self> {
        let stride = universe.div_ceil(64).max(1);
        let mut rows = vec![0u64; stride * sets.len()];
        for (i, set) in sets.iter().enumerate() {
            for &u in set {
                if u >= universe {
                    return Err(Error::InvalidArgument(format!(
                        "set {i} contains element {u} outside a universe of {universe}"
                    )));
                }
                rows[i * stride + u / 64] |= 1 << (u % 64);
            }
        }
        Ok(CoverageInstance {
            universe,
            stride,
            rows,
            sets: sets.len(),
        })
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn num_sets(&self) -> usize {
        self.sets
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.rows[i * self.stride..(i + 1) * self.stride]
    }

    /// Elements of `S_i`.
    pub fn set(&self, i: usize) -> Subset {
        let mut s = Subset::empty(self.universe);
        for (w, &word) in self.row(i).iter().enumerate() {
            let mut word = word;
            while word != 0 {
                s.insert(w * 64 + word.trailing_zeros() as usize);
                word &= word - 1;
            }
        }
        s
    }

    /// Size of the union of the selected sets.
    pub fn coverage_value(&self, x: &Subset) -> usize {
        debug_assert_eq!(x.len(), self.sets);
        let mut acc = vec![0u64; self.stride];
        for i in x.iter() {
            for (a, r) in acc.iter_mut().zip(self.row(i)) {
                *a |= r;
            }
        }
        acc.iter().map(|w| w.count_ones() as usize).sum()
    }
}

impl SubmodularObjective for CoverageInstance {
    fn ground_size(&self) -> usize {
        self.sets
    }

    fn value(&self, x: &Subset, _eval_index: u64) -> f64 {
        self.coverage_value(x) as f64
    }
}

/// One set per vertex: the vertex itself and its neighbours. Vertex ids are 0-based.
pub fn graph_to_coverage(nodes: usize, edges: &[(usize, usize)]) -> Result<CoverageInstance> {
    let mut sets: Vec<Vec<usize>> = (0..nodes).map(|v| vec![v]).collect();
    for (k, &(u, v)) in edges.iter().enumerate() {
        if u >= nodes || v >= nodes {
            return Err(Error::InvalidArgument(format!(
                "edge {k} ({u}, {v}) references a vertex outside 0..{nodes}"
            )));
        }
        sets[u].push(v);
        sets[v].push(u);
    }
    CoverageInstance::new(nodes, &sets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{stream_rng, Stream};
    use proptest::prelude::*;
    use rand::Rng;

    fn random_instance(seed: u64, n: usize, universe: usize) -> CoverageInstance {
        let mut rng = stream_rng(seed, Stream::Generator);
        let sets: Vec<Vec<usize>> = (0..n)
            .map(|_| (0..universe).filter(|_| rng.random_bool(0.2)).collect())
            .collect();
        CoverageInstance::new(universe, &sets).unwrap()
    }

    #[test]
    fn value_examples() {
        let tri = graph_to_coverage(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(tri.coverage_value(&Subset::empty(3)), 0);
        assert_eq!(tri.coverage_value(&Subset::from_indices(3, [0])), 3);

        let inst = CoverageInstance::new(3, &[vec![0, 1], vec![1, 2]]).unwrap();
        assert_eq!(inst.coverage_value(&Subset::full(2)), 3);
    }

    #[test]
    fn graph_construction_examples() {
        let single = graph_to_coverage(2, &[(0, 1)]).unwrap();
        assert_eq!(single.set(0), Subset::full(2));
        assert_eq!(single.set(1), Subset::full(2));

        let path = graph_to_coverage(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.set(1), Subset::full(3));
        assert_eq!(path.set(0), Subset::from_indices(3, [0, 1]));
        assert_eq!(path.set(2), Subset::from_indices(3, [1, 2]));

        assert!(graph_to_coverage(2, &[(0, 2)]).is_err());
    }

    #[test]
    fn submodular_exhaustively_for_small_n() {
        for seed in 0..5 {
            let n = 8;
            let inst = random_instance(seed, n, 20);
            let f = |m: u64| inst.coverage_value(&Subset::from_mask(n, m)) as i64;
            for t in 0u64..(1 << n) {
                // Every S ⊆ T via submask enumeration.
                let mut s = t;
                loop {
                    for x in (0..n).filter(|&x| t >> x & 1 == 0) {
                        let b = 1u64 << x;
                        assert!(f(s | b) - f(s) >= f(t | b) - f(t));
                    }
                    assert!(f(s) <= f(t));
                    if s == 0 {
                        break;
                    }
                    s = (s - 1) & t;
                }
            }
        }
    }

    proptest! {
        #[test]
        fn monotone_and_submodular_on_random_pairs(seed in 0u64..500, n in 9usize..60) {
            let inst = random_instance(seed, n, 100);
            let mut rng = stream_rng(seed, Stream::Sampling);
            let t = Subset::random(n, &mut rng);
            let s = Subset::from_indices(n, t.iter().filter(|_| rng.random_bool(0.5)));
            prop_assert!(inst.coverage_value(&s) <= inst.coverage_value(&t));
            if let Some(x) = (0..n).find(|&i| !t.contains(i)) {
                let gs = inst.coverage_value(&s.with(x)) - inst.coverage_value(&s);
                let gt = inst.coverage_value(&t.with(x)) - inst.coverage_value(&t);
                prop_assert!(gs >= gt);
            }
        }
    }
}
