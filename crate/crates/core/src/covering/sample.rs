use rand::Rng;
use rand_distr::{Distribution, Exp1};

use crate::linalg;
use crate::polytope::{Point, Polytope};
use crate::sphere::SeedStream;

/// Uniform point of `body` by rejection from its bounding box.
pub fn sample_in_body<R: Rng + ?Sized>(body: &Polytope, rng: &mut R, max_attempts: usize) -> Option<Vec<f64>> {
    let (lo, hi) = body.bounding_box();
    for _ in 0..max_attempts {
        let x: Vec<f64> = lo
            .iter()
            .zip(&hi)
            .map(|(l, h)| l + (h - l) * rng.random::<f64>())
            .collect();
        if body.contains(&x) {
            return Some(x);
        }
    }
    None
}

/// A random convex combination of the vertices; always inside the body.
fn convex_combination<R: Rng + ?Sized>(body: &Polytope, rng: &mut R) -> Vec<f64> {
    let weights: Vec<f64> = body.vertices().iter().map(|_| Exp1.sample(rng)).collect();
    let total: f64 = weights.iter().sum();
    let mut x = vec![0.0; body.dim()];
    for (w, v) in weights.iter().zip(body.vertices()) {
        for (xk, vk) in x.iter_mut().zip(v.iter()) {
            *xk += w / total * vk;
        }
    }
    x
}

/// `count` points of `body`, draw `i` from stream `i`.
pub fn points_in_body(body: &Polytope, count: usize, stream: &SeedStream) -> Vec<Point> {
    crate::sphere::sampling::map_draws(stream, 0, count as u64, |_, rng| {
        let x = sample_in_body(body, rng, 1000).unwrap_or_else(|| convex_combination(body, rng));
        Point::new(x)
    })
}

pub(crate) fn vertex_centroid(body: &Polytope) -> Vec<f64> {
    let mut c = vec![0.0; body.dim()];
    for v in body.vertices() {
        for (ck, vk) in c.iter_mut().zip(v.iter()) {
            *ck += vk;
        }
    }
    linalg::scaled(&c, 1.0 / body.vertices().len() as f64)
}
