//! Deterministic, seedable random-number streams.
//!
//! The generator is pinned so that a seed reproduces the same draw sequence
//! on every platform:
//!
//! * Core generator: ChaCha8 (`rand_chacha::ChaCha8Rng`), keyed with 32 bytes
//!   produced by four outputs of a SplitMix64 finalizer chain over the seed.
//! * `uniform`: `(next_u64 >> 11) * 2^-53`, giving an f64 in `[0, 1)`.
//! * `standard_normal`: Box-Muller from two uniforms (the first mapped to
//!   `(0, 1]` to keep the logarithm finite).
//! * `index`: widening-multiply bounded sampling with rejection, so indices
//!   are exactly uniform.
//!
//! Trial streams are derived by hashing `(master_seed, tag, tag, ...)`
//! through the same SplitMix64 finalizer, so independent trials never share
//! state. Streams are single-owner: parallel code derives one stream per
//! trial instead of sharing.

use crate::vector::Vector;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

const SPLITMIX_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer (Steele, Lea & Flood's mix13 variant).
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(SPLITMIX_GAMMA);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A deterministic stream of random draws.
#[derive(Debug, Clone)]
pub struct RngStream {
    inner: ChaCha8Rng,
    seed: u64,
}

impl RngStream {
    /// Stream seeded directly from a 64-bit seed.
    pub fn from_seed(seed: u64) -> Self {
        let mut s = seed;
        let mut key = [0u8; 32];
        for chunk in key.chunks_exact_mut(8) {
            chunk.copy_from_slice(&splitmix64(&mut s).to_le_bytes());
        }
        RngStream {
            inner: ChaCha8Rng::from_seed(key),
            seed,
        }
    }

    /// Stream derived from a master seed and a list of tags (trial index,
    /// horizon, optimizer id, ...). Distinct tag lists give independent
    /// streams; the tag-list length is absorbed so prefixes do not collide.
    pub fn derive(master_seed: u64, tags: &[u64]) -> Self {
        let mut s = master_seed;
        let mut acc = splitmix64(&mut s) ^ (tags.len() as u64);
        for &tag in tags {
            let mut t = tag;
            acc ^= splitmix64(&mut t);
            let mut a = acc;
            acc = splitmix64(&mut a);
        }
        Self::from_seed(acc)
    }

    /// The seed this stream was constructed from.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform f64 in `[0, 1)` with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform f64 in `(0, 1]`; safe as a logarithm argument.
    fn uniform_open(&mut self) -> f64 {
        ((self.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal draw via Box-Muller.
    pub fn standard_normal(&mut self) -> f64 {
        let u1 = self.uniform_open();
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }

    /// Exactly uniform index in `[0, n)`.
    ///
    /// Widening multiply maps `next_u64` onto `[0, n)`; draws landing in the
    /// biased low zone are rejected and retried.
    pub fn index(&mut self, n: usize) -> usize {
        assert!(n > 0, "index bound must be positive");
        let n = n as u64;
        // 2^64 mod n: draws with low half below this would be over-represented.
        let threshold = n.wrapping_neg() % n;
        loop {
            let wide = (self.next_u64() as u128) * (n as u128);
            if (wide as u64) >= threshold {
                return (wide >> 64) as usize;
            }
        }
    }

    /// Vector of i.i.d. normal components with the given standard deviation.
    pub fn normal_vector(&mut self, dim: usize, std: f64) -> Vector {
        Vector::from_vec((0..dim).map(|_| std * self.standard_normal()).collect())
    }

    /// Uniform draw from the Euclidean ball of the given radius.
    ///
    /// Direction from a normalized Gaussian, length `radius * u^(1/dim)`.
    pub fn ball_vector(&mut self, dim: usize, radius: f64) -> Vector {
        if radius == 0.0 {
            return Vector::zeros(dim);
        }
        let mut dir = loop {
            let v = self.normal_vector(dim, 1.0);
            if v.norm() > 1e-12 {
                break v;
            }
        };
        let len = radius * self.uniform_open().powf(1.0 / dim as f64);
        dir.scale(len / dir.norm());
        dir
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_seed_identical_sequence() {
        let mut a = RngStream::from_seed(42);
        let mut b = RngStream::from_seed(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn derived_streams_do_not_share_state() {
        let mut a = RngStream::derive(7, &[0]);
        let mut b = RngStream::derive(7, &[1]);
        let sa: Vec<u64> = (0..8).map(|_| a.next_u64()).collect();
        let sb: Vec<u64> = (0..8).map(|_| b.next_u64()).collect();
        assert_ne!(sa, sb);
    }

    #[test]
    fn derive_absorbs_tag_list_length() {
        let mut a = RngStream::derive(7, &[]);
        let mut b = RngStream::derive(7, &[0]);
        assert_ne!(a.next_u64(), b.next_u64());
    }

    #[test]
    fn uniform_is_in_unit_interval() {
        let mut rng = RngStream::from_seed(3);
        for _ in 0..10_000 {
            let u = rng.uniform();
            assert!((0.0..1.0).contains(&u));
        }
    }

    #[test]
    fn index_is_unbiased_within_monte_carlo_error() {
        let mut rng = RngStream::from_seed(11);
        let n = 4;
        let draws = 100_000;
        let mut counts = [0u64; 4];
        for _ in 0..draws {
            counts[rng.index(n)] += 1;
        }
        // Binomial stderr for p = 1/4.
        let p = 0.25;
        let stderr = (p * (1.0 - p) / draws as f64).sqrt();
        for &c in &counts {
            let freq = c as f64 / draws as f64;
            assert!(
                (freq - p).abs() <= 4.0 * stderr,
                "index frequency {freq} too far from {p}"
            );
        }
    }

    #[test]
    fn normal_moments_match_within_monte_carlo_error() {
        let mut rng = RngStream::from_seed(5);
        let n = 100_000;
        let draws: Vec<f64> = (0..n).map(|_| rng.standard_normal()).collect();
        let mean = draws.iter().sum::<f64>() / n as f64;
        let var = draws.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1) as f64;
        assert!(mean.abs() < 4.0 / (n as f64).sqrt());
        // Var of the sample variance of a normal is ~2/n.
        assert!((var - 1.0).abs() < 4.0 * (2.0 / n as f64).sqrt());
    }

    #[test]
    fn ball_second_moment_matches_closed_form() {
        // E||xi||^2 = r^2 * d / (d + 2) for the uniform ball.
        let mut rng = RngStream::from_seed(9);
        let (dim, radius) = (10usize, 2.0);
        let n = 50_000;
        let mut acc = 0.0;
        let mut acc_sq = 0.0;
        for _ in 0..n {
            let v = rng.ball_vector(dim, radius).norm_sq();
            assert!(v <= radius * radius + 1e-12);
            acc += v;
            acc_sq += v * v;
        }
        let mean = acc / n as f64;
        let var = (acc_sq - n as f64 * mean * mean) / (n as f64 - 1.0);
        let expected = radius * radius * dim as f64 / (dim as f64 + 2.0);
        let stderr = (var / n as f64).sqrt();
        assert!(
            (mean - expected).abs() <= 4.0 * stderr,
            "ball second moment {mean} vs {expected}"
        );
    }
}
