//! Deterministic, portable random streams.
//!
//! All stochastic operations in this crate draw from [`SeedStream`], a thin
//! wrapper around the ChaCha8 counter-based generator. The exact recipe is
//! fixed so that any implementation, in any language, can reproduce the
//! streams bit for bit:
//!
//! * stream key: ChaCha8 seeded via `seed_from_u64` (the standard SplitMix64
//!   key-expansion of `rand_core`);
//! * substreams: `SeedStream::substream(seed, index)` derives an independent
//!   per-unit key as `splitmix64(splitmix64(seed) + 1 + index)` and seeds a
//!   fresh ChaCha8 from it;
//! * `uniform01`: take the top 53 bits of the next `u64`, scale by 2^-53;
//! * `normal`: Box-Muller from two successive uniforms, cosine branch only
//!   (`sqrt(-2 ln u1) * cos(2 pi u2)` with `u1` shifted into `(0, 1]`);
//! * `below(n)`: `next_u64() % n`.
//!
//! Dataset generators consume one substream per unit, so the draws for unit
//! `i` do not depend on how many units or covariate columns precede it.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TWO_POW_NEG53: f64 = 1.0 / (1u64 << 53) as f64;

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Deterministic random stream with the drawing conventions documented above.
#[derive(Debug, Clone)]
pub struct SeedStream {
    rng: ChaCha8Rng,
}

impl SeedStream {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Independent substream `index` of the stream family keyed by `seed`.
    pub fn substream(seed: u64, index: u64) -> Self {
        let key = splitmix64(splitmix64(seed).wrapping_add(1).wrapping_add(index));
        Self::new(key)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform on `[0, 1)`.
    pub fn uniform01(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * TWO_POW_NEG53
    }

    /// Uniform on `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + self.uniform01() * (hi - lo)
    }

    /// Standard normal via Box-Muller (consumes exactly two `u64`s).
    pub fn standard_normal(&mut self) -> f64 {
        let u1 = ((self.next_u64() >> 11) + 1) as f64 * TWO_POW_NEG53;
        let u2 = self.uniform01();
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    }

    pub fn normal(&mut self, mean: f64, sd: f64) -> f64 {
        mean + sd * self.standard_normal()
    }

    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.uniform01() < p
    }

    /// Uniform integer in `[0, n)`.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "below(0) is undefined");
        self.next_u64() % n
    }

    /// In-place Fisher-Yates shuffle (descending index, swap with `below(i+1)`).
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_deterministic() {
        let mut a = SeedStream::new(7);
        let mut b = SeedStream::new(7);
        for _ in 0..64 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn substreams_differ_from_each_other() {
        let mut a = SeedStream::substream(7, 0);
        let mut b = SeedStream::substream(7, 1);
        assert_ne!(a.next_u64(), b.next_u64());
    }

    #[test]
    fn uniform01_is_in_range() {
        let mut s = SeedStream::new(3);
        for _ in 0..1000 {
            let u = s.uniform01();
            assert!((0.0..1.0).contains(&u));
        }
    }

    #[test]
    fn normal_moments_are_sane() {
        let mut s = SeedStream::new(11);
        let n = 200_000;
        let draws: Vec<f64> = (0..n).map(|_| s.standard_normal()).collect();
        let mean = draws.iter().sum::<f64>() / n as f64;
        let var = draws.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n as f64;
        assert!(mean.abs() < 0.01, "mean {mean}");
        assert!((var - 1.0).abs() < 0.02, "var {var}");
    }

    #[test]
    fn shuffle_is_a_permutation() {
        let mut s = SeedStream::new(5);
        let mut v: Vec<usize> = (0..50).collect();
        s.shuffle(&mut v);
        let mut sorted = v.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..50).collect::<Vec<_>>());
    }
}
