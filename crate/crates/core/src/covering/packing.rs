use rand::Rng;
use serde::Serialize;

use crate::linalg;
use crate::polytope::{Point, Polytope};
use crate::sphere::SeedStream;

/// Points of a body pairwise more than 2 apart. A unit ball has diameter 2,
/// so it holds at most one of them and any cover needs `points.len()` balls.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PackingWitness {
    pub points: Vec<Point>,
}

impl PackingWitness {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Membership and separation re-checked from scratch.
    pub fn is_valid(&self, body: &Polytope) -> bool {
        let eps = body.eps();
        self.points.iter().all(|p| body.contains(p))
            && self.points.iter().enumerate().all(|(i, p)| {
                self.points[i + 1..]
                    .iter()
                    .all(|q| linalg::dist(p, q) > 2.0 + eps)
            })
    }
}

/// Greedy farthest-point insertion from `rounds` random starting points
/// over a pool of vertices, facet centroids and `random_points` samples.
pub fn packing_lower(body: &Polytope, stream: &SeedStream, rounds: usize, random_points: usize) -> (usize, PackingWitness) {
    let mut pool: Vec<Point> = body.vertices().to_vec();
    pool.extend(body.facet_centroids());
    pool.extend(super::sample::points_in_body(body, random_points, &stream.fork(0)));
    let eps = body.eps();
    let starts = stream.fork(1);

    let mut best: Vec<usize> = vec![0];
    for round in 0..rounds.max(1) {
        let first = starts.rng(round as u64).random_range(0..pool.len());
        let mut chosen = vec![first];
        let mut gap: Vec<f64> = pool.iter().map(|p| linalg::dist(p, &pool[first])).collect();
        loop {
            let (far, d) = gap
                .iter()
                .enumerate()
                .fold((0, f64::NEG_INFINITY), |acc, (i, &d)| if d > acc.1 { (i, d) } else { acc });
            if d <= 2.0 + eps {
                break;
            }
            chosen.push(far);
            for (g, p) in gap.iter_mut().zip(&pool) {
                *g = g.min(linalg::dist(p, &pool[far]));
            }
        }
        if chosen.len() > best.len() {
            best = chosen;
        }
    }
    let points: Vec<Point> = best.iter().map(|&i| pool[i].clone()).collect();
    (points.len(), PackingWitness { points })
}
