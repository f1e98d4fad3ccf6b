//! Geometry of polytopes that are easy to cover by Euclidean unit balls.
//!
//! The crate computes facet sets, inradii, radial and support functions,
//! spherical cap measures and covering-number bounds, and checks the
//! inequalities that tie the number of facets of a polytope to its inradius
//! and its covering number. Every Monte Carlo step is driven by an explicit
//! seed and produces identical results for any worker count.

pub mod cli;
pub mod covering;
pub mod error;
pub mod linalg;
pub mod logscale;
pub mod polytope;
pub mod sphere;
pub mod verify;

pub use error::{Error, Result};
pub use logscale::LogValue;
pub use polytope::{Facet, HalfSpace, Point, Polytope, PolytopeH, PolytopeV, Tolerance};
