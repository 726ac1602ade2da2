//! Reproducible random streams.
//!
//! A run is fully determined by its master seed. Each consumer inside a run
//! draws from its own ChaCha stream so that, for example, changing the
//! crossover operator does not perturb the mutation sequence.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stream {
    Initialization,
    Selection,
    Mutation,
    Crossover,
    Cascade,
    Sampling,
    Generator,
}

impl Stream {
    fn offset(self) -> u64 {
        match self {
            Stream::Initialization => 0,
            Stream::Selection => 1,
            Stream::Mutation => 2,
            Stream::Crossover => 3,
            Stream::Cascade => 4,
            Stream::Sampling => 5,
            Stream::Generator => 6,
        }
    }
}

pub fn stream_rng(seed: u64, stream: Stream) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream.offset());
    rng
}

/// SplitMix64 finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Counter-based uniform draw in `[0, 1)` keyed by `(seed, a, b)`.
#[inline]
pub fn counter_uniform(seed: u64, a: u64, b: u64) -> f64 {
    let h = mix64(mix64(mix64(seed) ^ a) ^ b);
    (h >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}
