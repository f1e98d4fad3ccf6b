//! Seeded, splittable random streams.
//!
//! Every draw `i` of a Monte Carlo loop gets its own ChaCha8 stream
//! `(key, i)`, so a loop produces the same samples whether it runs on one
//! worker or many, and reductions are done in index order.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeedStream {
    seed: u64,
    key: [u8; 32],
}

impl SeedStream {
    pub fn new(seed: u64) -> Self {
        let key = ChaCha8Rng::seed_from_u64(seed).get_seed();
        Self { seed, key }
    }

    /// The master seed this stream family was created from.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// An independent family for a different purpose, e.g. candidate
    /// generation versus direction sampling.
    pub fn fork(&self, label: u64) -> Self {
        let mut rng = ChaCha8Rng::from_seed(self.key);
        rng.set_stream(u64::MAX - label);
        let mut key = [0u8; 32];
        rng.fill_bytes(&mut key);
        Self { seed: self.seed, key }
    }

    /// Generator for draw `index`.
    pub fn rng(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::from_seed(self.key);
        rng.set_stream(index);
        rng
    }
}

/// Uniform point on `S^{n-1}`: a normalized standard Gaussian vector.
pub fn sample_sphere<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| StandardNormal.sample(rng)).collect();
        let len = crate::linalg::norm(&v);
        if len > 1e-150 {
            return v.into_iter().map(|x| x / len).collect();
        }
    }
}

/// `f(i, rng_i)` for `i` in `start..start + count`, in index order.
pub fn map_draws<T, F>(stream: &SeedStream, start: u64, count: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64, &mut ChaCha8Rng) -> T + Sync,
{
    (start..start + count)
        .into_par_iter()
        .map(|i| f(i, &mut stream.rng(i)))
        .collect()
}
