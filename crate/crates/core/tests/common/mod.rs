#![allow(dead_code)]

use facetwise::cli::generate::{generate, Family, FamilyParams};
use facetwise::polytope::{EnumerationOptions, Polytope, PolytopeV};

pub fn vertices(family: Family, n: usize) -> PolytopeV {
    generate(family, &FamilyParams { n, ..Default::default() }, 0).unwrap()
}

pub fn body(family: Family, n: usize) -> Polytope {
    Polytope::from_vertices(&vertices(family, n), &EnumerationOptions::default()).unwrap()
}

pub fn slab(n: usize, a: f64, b: f64) -> Polytope {
    let p = FamilyParams { n, a: Some(a), b: Some(b), ..Default::default() };
    Polytope::from_vertices(&generate(Family::Slab, &p, 0).unwrap(), &EnumerationOptions::default()).unwrap()
}

pub fn cube(n: usize, half: f64) -> Polytope {
    let p = FamilyParams { n, a: Some(half), ..Default::default() };
    Polytope::from_vertices(&generate(Family::Cube, &p, 0).unwrap(), &EnumerationOptions::default()).unwrap()
}

pub fn random_hull_v(n: usize, m: usize, seed: u64) -> PolytopeV {
    let p = FamilyParams { n, m: Some(m), ..Default::default() };
    generate(Family::RandomHull, &p, seed).unwrap()
}

pub fn random_hull(n: usize, m: usize, seed: u64) -> Polytope {
    Polytope::from_vertices(&random_hull_v(n, m, seed), &EnumerationOptions::default()).unwrap()
}

/// Unit direction from a raw vector, for property tests.
pub fn unit(raw: &[f64]) -> Option<Vec<f64>> {
    let len = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
    (len > 1e-3).then(|| raw.iter().map(|x| x / len).collect())
}
