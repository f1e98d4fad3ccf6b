//! Directions nearly orthogonal to every center of a ball covering.

use serde::Serialize;

use super::sampling::{map_draws, sample_sphere, SeedStream};
use crate::error::{Error, Result};
use crate::linalg;

/// `{theta in S^{n-1} : |<x_i / |x_i|, theta>| <= epsilon for all i}`.
/// Centers at the origin impose no constraint and are dropped.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NearOrthogonalSet {
    dim: usize,
    normalized_centers: Vec<Vec<f64>>,
    epsilon: f64,
}

impl NearOrthogonalSet {
    pub fn new<P: AsRef<[f64]>>(dim: usize, centers: &[P], epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::invalid(format!("epsilon must lie in (0, 1), got {epsilon}")));
        }
        let mut normalized_centers = Vec::new();
        for c in centers {
            let c = c.as_ref();
            if c.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: c.len(),
                });
            }
            if let Some(u) = linalg::normalized(c, 1e-12) {
                normalized_centers.push(u);
            }
        }
        Ok(Self {
            dim,
            normalized_centers,
            epsilon,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Centers left after dropping the origin.
    pub fn retained(&self) -> usize {
        self.normalized_centers.len()
    }

    pub fn normalized_centers(&self) -> &[Vec<f64>] {
        &self.normalized_centers
    }

    pub fn contains(&self, theta: &[f64]) -> bool {
        self.normalized_centers
            .iter()
            .all(|u| linalg::dot(u, theta).abs() <= self.epsilon)
    }
}

/// Indicator-mean estimate with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasureEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
}

impl MeasureEstimate {
    pub fn from_hits(hits: u64, samples: u64, seed: u64) -> Self {
        let mean = hits as f64 / samples as f64;
        Self {
            mean,
            stderr: (mean * (1.0 - mean) / samples as f64).sqrt(),
            samples,
            seed,
        }
    }
}

/// Monte Carlo estimate of the uniform measure of `set`.
pub fn measure_mc(set: &NearOrthogonalSet, samples: u64, stream: &SeedStream) -> Result<MeasureEstimate> {
    if samples < 1000 {
        return Err(Error::invalid(format!("at least 1000 samples are required, got {samples}")));
    }
    if set.retained() == 0 {
        return Ok(MeasureEstimate::from_hits(samples, samples, stream.seed()));
    }
    let hits = map_draws(stream, 0, samples, |_, rng| set.contains(&sample_sphere(set.dim, rng)))
        .into_iter()
        .filter(|&h| h)
        .count() as u64;
    Ok(MeasureEstimate::from_hits(hits, samples, stream.seed()))
}

/// `1 - 2 exp(log N - n eps^2 / 2)`, returned raw; `vacuous` when `<= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LowerBound {
    pub value: f64,
    pub vacuous: bool,
}

impl LowerBound {
    pub fn new(value: f64) -> Self {
        Self {
            value,
            vacuous: value.is_nan() || value <= 0.0,
        }
    }
}

/// Union bound on the measure of the near-orthogonal set of `count` centers,
/// with every cap estimated by `exp(-n eps^2 / 2)`.
pub fn near_orthogonal_lower_bound(count: u64, n: usize, epsilon: f64) -> Result<LowerBound> {
    if count < 1 {
        return Err(Error::invalid("the number of centers must be at least 1"));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::invalid(format!("epsilon must lie in (0, 1), got {epsilon}")));
    }
    let exponent = (count as f64).ln() - 0.5 * n as f64 * epsilon * epsilon;
    Ok(LowerBound::new(1.0 - 2.0 * exponent.exp()))
}

/// The same union bound with the exact cap measure:
/// `1 - 2 * count * sigma(C(theta, eps))`.
pub fn near_orthogonal_exact_union_bound(count: u64, n: usize, epsilon: f64) -> Result<LowerBound> {
    let cap = super::exact_cap_measure(n, epsilon)?;
    Ok(LowerBound::new(1.0 - 2.0 * count as f64 * cap))
}
