//! Deterministic pseudo-random numbers for seeded draws.
//!
//! Every seeded operation in the crate (dataset shuffling, k-means
//! initialization, synthetic fixtures in the test suites) uses this
//! generator, so results are reproducible bit-for-bit across platforms
//! and independent of any external RNG crate's version.
//!
//! The generator is a plain 64-bit linear congruential generator,
//!
//! ```text
//! state' = state * 6364136223846793005 + 1442695040888963407  (mod 2^64)
//! ```
//!
//! with Knuth's MMIX multiplier and increment. Bounded draws use the high
//! 32 bits of the state (the low bits of an LCG have short periods).

/// A 64-bit linear congruential generator. See the module docs for the
/// exact parameters.
#[derive(Debug, Clone)]
pub struct Lcg {
    state: u64,
}

const MULTIPLIER: u64 = 6364136223846793005;
const INCREMENT: u64 = 1442695040888963407;

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Lcg { state: seed }
    }

    /// Advances the state and returns it.
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_mul(MULTIPLIER).wrapping_add(INCREMENT);
        self.state
    }

    /// Uniform draw in `0..n` from the high 32 bits. Intended for bounds
    /// well below 2^32; panics when `n == 0`.
    pub fn next_below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "next_below requires n > 0");
        (self.next_u64() >> 32) % n
    }

    /// Uniform draw in `[0, 1)` with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform draw in `[lo, hi)`.
    pub fn next_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Fisher-Yates shuffle, walking from the top index down.
    pub fn shuffle<T>(&mut self, slice: &mut [T]) {
        for i in (1..slice.len()).rev() {
            let j = self.next_below((i + 1) as u64) as usize;
            slice.swap(i, j);
        }
    }
}
