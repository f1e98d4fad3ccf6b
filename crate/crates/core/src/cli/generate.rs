//! Named polytope families and seeded random hulls.

use clap::ValueEnum;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, OrthoBasis};
use crate::polytope::{Point, PolytopeV};
use crate::sphere::{sample_sphere, SeedStream};

const STREAM_RANDOM_HULL: u64 = 20;
/// `2^n` vertices are listed explicitly, so the cube is capped here.
const MAX_CUBE_DIM: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `[-a, a]^n`, with `a = 1` by default.
    Cube,
    /// `conv{+-e_i}`.
    Cross,
    /// Regular simplex centered at the origin with circumradius 1.
    Simplex,
    /// `[-a, a] x [-b, b]^{n-1}`.
    Slab,
    /// Hull of `m` uniform points on the unit sphere.
    RandomHull,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct FamilyParams {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
}

fn positive(name: &str, x: f64) -> Result<f64> {
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(Error::invalid(format!("--{name} must be positive and finite, got {x}")))
    }
}

fn sign_vertices(half: &[f64]) -> Vec<Vec<f64>> {
    let n = half.len();
    (0..1u64 << n)
        .map(|mask| {
            (0..n)
                .map(|i| if mask >> i & 1 == 1 { half[i] } else { -half[i] })
                .collect()
        })
        .collect()
}

pub fn generate(family: Family, params: &FamilyParams, seed: u64) -> Result<PolytopeV> {
    let n = params.n;
    if n < 2 {
        return Err(Error::invalid(format!("--n must be at least 2, got {n}")));
    }
    let coords = match family {
        Family::Cube => {
            if n > MAX_CUBE_DIM {
                return Err(Error::invalid(format!("cube is limited to n <= {MAX_CUBE_DIM}")));
            }
            let a = positive("a", params.a.unwrap_or(1.0))?;
            sign_vertices(&vec![a; n])
        }
        Family::Cross => (0..2 * n)
            .map(|k| {
                let mut v = vec![0.0; n];
                v[k / 2] = if k % 2 == 0 { 1.0 } else { -1.0 };
                v
            })
            .collect(),
        Family::Simplex => regular_simplex(n),
        Family::Slab => {
            if n > MAX_CUBE_DIM {
                return Err(Error::invalid(format!("slab is limited to n <= {MAX_CUBE_DIM}")));
            }
            let (Some(a), Some(b)) = (params.a, params.b) else {
                return Err(Error::invalid("slab needs --a and --b"));
            };
            let mut half = vec![positive("b", b)?; n];
            half[0] = positive("a", a)?;
            sign_vertices(&half)
        }
        Family::RandomHull => {
            let Some(m) = params.m else {
                return Err(Error::invalid("random-hull needs --m"));
            };
            if m < n + 1 {
                return Err(Error::invalid(format!("random-hull needs m >= n + 1, got m = {m}")));
            }
            let stream = SeedStream::new(seed).fork(STREAM_RANDOM_HULL);
            (0..m as u64)
                .map(|i| sample_sphere(n, &mut stream.rng(i)))
                .collect()
        }
    };
    PolytopeV::new(n, coords.into_iter().map(Point::new).collect())
}

/// The `n + 1` vertices `e_i - centroid` of the standard simplex in
/// `R^{n+1}`, written in an orthonormal basis of the hyperplane they span
/// and scaled to unit norm.
fn regular_simplex(n: usize) -> Vec<Vec<f64>> {
    let mut basis = OrthoBasis::new();
    basis.try_push(&vec![1.0; n + 1], 1e-12);
    let plane = basis.complement(n + 1);
    let shift = 1.0 / (n as f64 + 1.0);
    (0..=n)
        .map(|i| {
            let mut e = vec![-shift; n + 1];
            e[i] += 1.0;
            let v: Vec<f64> = plane.iter().map(|b| linalg::dot(&e, b)).collect();
            let len = linalg::norm(&v);
            v.into_iter().map(|x| x / len).collect()
        })
        .collect()
}
