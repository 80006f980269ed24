//! Deterministic random generation.
//!
//! Every experiment draws from a [`RandomSource`]: a (seed, stream) pair that
//! names one reproducible random stream. The generator is ChaCha12 with the
//! 256-bit key expanded from the seed by SplitMix64 (the `SeedableRng::
//! seed_from_u64` construction) and the stream id mapped onto ChaCha's 64-bit
//! stream counter. Identical (seed, stream) pairs produce identical sequences
//! on every platform, and distinct stream ids produce independent sequences
//! under the same seed — which is how parallel trials stay reproducible.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::pattern::{BipolarPattern, MemorySet};

/// A named, reproducible random stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomSource {
    seed: u64,
    stream: u64,
}

impl RandomSource {
    /// Stream 0 of the given seed.
    pub fn new(seed: u64) -> Self {
        Self { seed, stream: 0 }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    /// The same seed on a different stream. Forking randomness this way is
    /// the only supported way to obtain independent streams.
    pub fn with_stream(&self, stream: u64) -> Self {
        Self { seed: self.seed, stream }
    }

    /// Stream offset by `i`; callers assigning blocks of streams are expected
    /// to space their bases at least as far apart as the largest offset used.
    pub fn substream(&self, i: u64) -> Self {
        Self { seed: self.seed, stream: self.stream.wrapping_add(i) }
    }

    /// Instantiates the generator for this (seed, stream).
    pub fn rng(&self) -> ChaCha12Rng {
        let mut rng = ChaCha12Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}

/// Draws `m` random bipolar patterns of length `n`, each element independently
/// -1 or +1 with probability 1/2.
pub fn random_memories(n: usize, m: usize, source: &RandomSource) -> Result<MemorySet> {
    if n == 0 {
        return Err(Error::InvalidDimension("neuron count must be >= 1".into()));
    }
    if m == 0 {
        return Err(Error::InvalidDimension("memory count must be >= 1".into()));
    }
    let mut rng = source.rng();
    let mut patterns = Vec::with_capacity(m);
    for _ in 0..m {
        let values: Vec<i8> = (0..n).map(|_| random_bit(&mut rng)).collect();
        patterns.push(BipolarPattern::new(values)?);
    }
    MemorySet::new(patterns)
}

/// One fair bipolar draw: the low bit of the next 32-bit word.
pub(crate) fn random_bit(rng: &mut ChaCha12Rng) -> i8 {
    if rng.next_u32() & 1 == 1 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_zero_dimensions() {
        let src = RandomSource::new(1);
        assert!(random_memories(0, 3, &src).is_err());
        assert!(random_memories(3, 0, &src).is_err());
    }

    #[test]
    fn same_source_is_bit_identical() {
        let src = RandomSource::new(42);
        let a = random_memories(7, 5, &src).unwrap();
        let b = random_memories(7, 5, &src).unwrap();
        assert_eq!(a, b);
        for p in a.iter() {
            assert!(p.iter().all(|&v| v == 1 || v == -1));
        }
    }

    #[test]
    fn distinct_streams_differ() {
        let src = RandomSource::new(42);
        let a = random_memories(64, 4, &src).unwrap();
        let b = random_memories(64, 4, &src.with_stream(1)).unwrap();
        assert_ne!(a, b);
    }

    // Oracle for the large-sample examples: direct counting.
    #[test]
    fn elements_are_balanced() {
        let src = RandomSource::new(7);
        let set = random_memories(1000, 100, &src).unwrap();
        let total = 1000 * 100;
        let plus: i64 = set.iter().flat_map(|p| p.iter()).filter(|&&v| v == 1).count() as i64;
        let mean = (2 * plus - total) as f64 / total as f64;
        assert!(mean.abs() <= 0.1, "per-element mean {mean} outside [-0.1, 0.1]");
        // Balance invariant over 10^5 elements.
        let frac = plus as f64 / total as f64;
        assert!((0.49..=0.51).contains(&frac), "fraction of +1 was {frac}");
    }
}
