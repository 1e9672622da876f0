//! Seeded, portable sampling.
//!
//! Streams come from ChaCha20 (`rand_chacha::ChaCha20Rng`) seeded with
//! `seed_from_u64(seed)`; case streams select ChaCha stream `case_id`.
//! A uniform draw is `(next_u64() >> 11) * 2^-53`, and an index is sampled
//! by scanning the cumulative distribution for the first entry whose
//! running sum exceeds `draw * total`. Those three rules are enough to
//! reproduce sampled indices in another implementation.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::linalg::C64;

#[derive(Clone, Debug)]
pub struct SeededRng {
    inner: ChaCha20Rng,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        Self {
            inner: ChaCha20Rng::seed_from_u64(seed),
        }
    }

    /// Independent stream for one verification case.
    pub fn for_case(seed: u64, case_id: u64) -> Self {
        let mut inner = ChaCha20Rng::seed_from_u64(seed);
        inner.set_stream(case_id);
        Self { inner }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.inner.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Complex number with both parts uniform in `[-1, 1)`.
    pub fn complex(&mut self) -> C64 {
        let re = self.uniform(-1.0, 1.0);
        let im = self.uniform(-1.0, 1.0);
        C64::new(re, im)
    }

    /// Uniform index in `0..n`.
    pub fn index(&mut self, n: usize) -> usize {
        ((self.next_f64() * n as f64) as usize).min(n - 1)
    }

    /// Samples an index proportional to `weights` (need not sum to one).
    ///
    /// Panics if every weight is zero.
    pub fn sample_index(&mut self, weights: &[f64]) -> usize {
        let total: f64 = weights.iter().sum();
        assert!(total > 0.0, "cannot sample from an all-zero distribution");
        let target = self.next_f64() * total;
        let mut acc = 0.0;
        for (i, &w) in weights.iter().enumerate() {
            acc += w;
            if target < acc {
                return i;
            }
        }
        // Rounding can leave `target` just past the final sum.
        weights
            .iter()
            .rposition(|&w| w > 0.0)
            .expect("nonzero weight")
    }

    /// Fisher-Yates shuffle of `0..n`.
    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut out: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = self.index(i + 1);
            out.swap(i, j);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let mut a = SeededRng::new(42);
        let mut b = SeededRng::new(42);
        for _ in 0..16 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn case_streams_differ() {
        let mut a = SeededRng::for_case(1, 0);
        let mut b = SeededRng::for_case(1, 1);
        assert_ne!(a.next_u64(), b.next_u64());
    }

    #[test]
    fn sampling_respects_support() {
        let mut rng = SeededRng::new(7);
        let weights = [0.0, 0.25, 0.0, 0.75];
        for _ in 0..200 {
            let i = rng.sample_index(&weights);
            assert!(i == 1 || i == 3);
        }
        assert_eq!(rng.sample_index(&[0.0, 1.0]), 1);
    }

    #[test]
    fn permutation_is_a_permutation() {
        let mut p = SeededRng::new(3).permutation(10);
        p.sort_unstable();
        assert_eq!(p, (0..10).collect::<Vec<_>>());
    }
}
