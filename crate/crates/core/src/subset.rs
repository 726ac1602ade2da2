//! Fixed-length bit vector encoding of a subset of the ground set.

use std::fmt;

use rand::Rng;

const WORD: usize = 64;

/// A subset `X ⊆ V` over a ground set of fixed size `n`, stored as a bit
/// string. The cardinality is cached and kept equal to the popcount.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subset {
    words: Vec<u64>,
    len: usize,
    count: usize,
}

impl Subset {
    pub fn empty(len: usize) -> Self {
        Subset {
            words: vec![0; len.div_ceil(WORD)],
            len,
            count: 0,
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Subset::empty(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    /// Builds a subset from element indices. Out-of-range indices panic.
    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Subset::empty(len);
        for i in indices {
            s.insert(i);
        }
        s
    }

    /// Low `len` bits of `mask` (`len ≤ 64`).
    pub fn from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= WORD, "mask subsets are limited to 64 elements");
        let mask = if len == WORD { mask } else { mask & ((1u64 << len) - 1) };
        Subset {
            words: if len == 0 { Vec::new() } else { vec![mask] },
            len,
            count: mask.count_ones() as usize,
        }
    }

    /// Uniformly random bit string.
    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        let mut words: Vec<u64> = (0..len.div_ceil(WORD)).map(|_| rng.random()).collect();
        if !len.is_multiple_of(WORD) {
            if let Some(last) = words.last_mut() {
                *last &= (1u64 << (len % WORD)) - 1;
            }
        }
        let count = words.iter().map(|w| w.count_ones() as usize).sum();
        Subset { words, len, count }
    }

    /// Size of the ground set.
    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    /// `|X|`.
    #[inline]
    pub fn count(&self) -> usize {
        self.count
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        assert!(i < self.len, "element {i} out of range {}", self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    /// Returns `true` if the element was absent.
    pub fn insert(&mut self, i: usize) -> bool {
        if self.contains(i) {
            return false;
        }
        self.words[i / WORD] |= 1 << (i % WORD);
        self.count += 1;
        true
    }

    /// Returns `true` if the element was present.
    pub fn remove(&mut self, i: usize) -> bool {
        if !self.contains(i) {
            return false;
        }
        self.words[i / WORD] &= !(1 << (i % WORD));
        self.count -= 1;
        true
    }

    pub fn flip(&mut self, i: usize) {
        if !self.insert(i) {
            self.remove(i);
        }
    }

    pub fn with(&self, i: usize) -> Self {
        let mut s = self.clone();
        s.insert(i);
        s
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD + bit)
            })
        })
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.len == other.len && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Hex encoding of the bit string, most significant word first.
    pub fn to_hex(&self) -> String {
        if self.words.is_empty() {
            return "0".to_string();
        }
        let mut out = String::with_capacity(self.words.len() * 16);
        for w in self.words.iter().rev() {
            out.push_str(&format!("{w:016x}"));
        }
        out
    }

    /// Applies the permutation `perm` (element `i` moves to `perm[i]`).
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.len);
        Subset::from_indices(self.len, self.iter().map(|i| perm[i]))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
