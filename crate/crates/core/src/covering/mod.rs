//! Bounds on the number of unit Euclidean balls needed to cover a polytope.
//!
//! The upper bound comes with a certificate (grid dominance, or a single
//! ball holding every vertex); the lower bound with a packing witness. The
//! two are reported side by side and never merged into a point estimate.

mod greedy;
mod grid;
mod packing;
mod sample;

pub use greedy::{greedy_cover_upper, GreedyCover, GreedyOptions};
pub use grid::{verify_covering, CertificateMethod, CoverStatus, CoveringCertificate, GridOptions};
pub(crate) use grid::min_distance;
pub use packing::{packing_lower, PackingWitness};
pub use sample::{points_in_body, sample_in_body};

use serde::Serialize;

use crate::error::Result;
use crate::linalg;
use crate::polytope::{Point, Polytope};
use crate::sphere::SeedStream;

/// Which points the greedy cover may use as ball centers.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateConfig {
    pub origin: bool,
    pub vertex_centroid: bool,
    pub vertices: bool,
    /// Copies of the vertex set scaled about the vertex centroid.
    pub scales: Vec<f64>,
    pub facet_centroids: bool,
    pub random_points: usize,
}

impl Default for CandidateConfig {
    fn default() -> Self {
        Self {
            origin: true,
            vertex_centroid: true,
            vertices: true,
            scales: vec![0.25, 0.5, 0.75],
            facet_centroids: true,
            random_points: 64,
        }
    }
}

pub fn generate_candidates(body: &Polytope, cfg: &CandidateConfig, stream: &SeedStream) -> Vec<Point> {
    let centroid = sample::vertex_centroid(body);
    let mut out = Vec::new();
    if cfg.origin {
        out.push(Point::origin(body.dim()));
    }
    if cfg.vertex_centroid {
        out.push(Point::new(centroid.clone()));
    }
    if cfg.vertices {
        out.extend(body.vertices().iter().cloned());
    }
    for &s in &cfg.scales {
        out.extend(body.vertices().iter().map(|v| {
            let d = linalg::sub(v, &centroid);
            Point::new(linalg::add(&centroid, &linalg::scaled(&d, s)))
        }));
    }
    if cfg.facet_centroids {
        out.extend(body.facet_centroids());
    }
    out.extend(points_in_body(body, cfg.random_points, stream));
    out
}

#[derive(Debug, Clone)]
pub struct CoverOptions {
    pub greedy: GreedyOptions,
    pub candidates: CandidateConfig,
    /// Replaces generated candidates when set.
    pub explicit_candidates: Option<Vec<Point>>,
    pub packing_rounds: usize,
    pub packing_pool: usize,
    pub seed: u64,
}

impl CoverOptions {
    pub fn for_dim(n: usize) -> Self {
        Self {
            greedy: GreedyOptions::for_dim(n),
            candidates: CandidateConfig::default(),
            explicit_candidates: None,
            packing_rounds: 32,
            packing_pool: 256,
            seed: 0,
        }
    }

    pub fn with_delta(mut self, delta: f64) -> Self {
        self.greedy.grid.delta = delta;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CoverBounds {
    pub n_low: usize,
    /// `None` when no certified cover was found among the candidates.
    pub n_up: Option<usize>,
    pub packing: PackingWitness,
    pub cover: GreedyCover,
}

impl CoverBounds {
    pub fn certificate(&self) -> &CoveringCertificate {
        &self.cover.certificate
    }

    pub fn centers(&self) -> &[Point] {
        &self.cover.centers
    }

    pub fn is_exact(&self) -> bool {
        self.n_up == Some(self.n_low)
    }
}

const STREAM_CANDIDATES: u64 = 10;
const STREAM_PACKING: u64 = 11;

/// Packing lower bound and certified greedy upper bound, from one seed.
pub fn covering_number_bounds(body: &Polytope, opts: &CoverOptions) -> Result<CoverBounds> {
    let stream = SeedStream::new(opts.seed);
    let (n_low, packing) = packing_lower(body, &stream.fork(STREAM_PACKING), opts.packing_rounds, opts.packing_pool);
    let candidates = match &opts.explicit_candidates {
        Some(c) => c.clone(),
        None => generate_candidates(body, &opts.candidates, &stream.fork(STREAM_CANDIDATES)),
    };
    let greedy_opts = GreedyOptions {
        min_size: n_low,
        ..opts.greedy
    };
    let cover = greedy_cover_upper(body, &candidates, &greedy_opts)?;
    Ok(CoverBounds {
        n_low,
        n_up: cover.n_up,
        packing,
        cover,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{EnumerationOptions, PolytopeV};

    fn boxed(half: &[f64]) -> Polytope {
        let n = half.len();
        let v = (0..1u32 << n)
            .map(|m| (0..n).map(|k| if m >> k & 1 == 1 { half[k] } else { -half[k] }).collect())
            .collect();
        Polytope::from_vertices(&PolytopeV::from_coords(v).unwrap(), &EnumerationOptions::default()).unwrap()
    }

    #[test]
    fn small_square_needs_one_ball() {
        let k = boxed(&[0.5, 0.5]);
        let cert = verify_covering(&k, &[Point::origin(2)], GridOptions { delta: 0.05, max_cells: 1e8 }).unwrap();
        assert!(cert.is_certified());
        let b = covering_number_bounds(&k, &CoverOptions::for_dim(2)).unwrap();
        assert_eq!((b.n_low, b.n_up), (1, Some(1)));
    }

    #[test]
    fn far_center_is_refuted() {
        let k = boxed(&[0.5, 0.5]);
        let cert = verify_covering(&k, &[Point::new(vec![2.0, 0.0])], GridOptions::for_dim(2)).unwrap();
        match cert.status {
            CoverStatus::Refuted { witness, distance } => {
                assert!((witness[0] + 0.5).abs() < 1e-12 && (witness[1].abs() - 0.5).abs() < 1e-12);
                assert!(distance > 2.0);
            }
            other => panic!("expected refutation, got {other:?}"),
        }
    }

    #[test]
    fn grid_budget_is_enforced() {
        let k = boxed(&[1.0, 1.0]);
        let quads: Vec<Point> = [[0.5, 0.5], [-0.5, 0.5], [-0.5, -0.5], [0.5, -0.5]]
            .iter()
            .map(|c| Point::new(c.to_vec()))
            .collect();
        let err = verify_covering(&k, &quads, GridOptions { delta: 1e-4, max_cells: 1e6 }).unwrap_err();
        assert!(matches!(err, crate::Error::BudgetExceeded { .. }));
    }

    #[test]
    fn packing_in_small_body_is_single_point() {
        let (n, w) = packing_lower(&boxed(&[0.5, 0.5]), &SeedStream::new(3), 8, 32);
        assert_eq!(n, 1);
        assert_eq!(w.len(), 1);
    }
}
