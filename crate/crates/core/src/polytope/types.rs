use serde::{Deserialize, Serialize};
use std::ops::Deref;

use crate::error::{Error, Result};
use crate::linalg;

/// Tolerances for geometric predicates, relative to the coordinate scale
/// `max(1, max |x_i|)` of the polytope they are applied to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    /// Incidence and side-of-hyperplane tests.
    pub geometric: f64,
    /// Two hyperplanes closer than this (normal and offset) are the same facet.
    pub merge: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            geometric: 1e-9,
            merge: 1e-8,
        }
    }
}

impl Tolerance {
    pub fn with_geometric(geometric: f64) -> Self {
        Self {
            geometric,
            merge: 10.0 * geometric,
        }
    }
}

/// A point of R^n.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Self {
        Self(coords)
    }

    pub fn origin(dim: usize) -> Self {
        Self(vec![0.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn norm(&self) -> f64 {
        linalg::norm(&self.0)
    }
}

impl Deref for Point {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl AsRef<[f64]> for Point {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

impl From<Vec<f64>> for Point {
    fn from(v: Vec<f64>) -> Self {
        Self(v)
    }
}

/// `{x : <normal, x> <= offset}` with a unit normal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HalfSpace {
    pub normal: Vec<f64>,
    pub offset: f64,
}

impl HalfSpace {
    /// Rescales `normal` (and `offset`) to unit length.
    pub fn new(normal: Vec<f64>, offset: f64) -> Result<Self> {
        let len = linalg::norm(&normal);
        if !(len.is_finite() && len > 0.0) || !offset.is_finite() {
            return Err(Error::invalid(format!(
                "halfspace needs a finite nonzero normal and finite offset (|a| = {len}, b = {offset})"
            )));
        }
        Ok(Self {
            normal: linalg::scaled(&normal, 1.0 / len),
            offset: offset / len,
        })
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// Signed slack `<a, x> - b`; positive means outside.
    pub fn excess(&self, x: &[f64]) -> f64 {
        linalg::dot(&self.normal, x) - self.offset
    }

    pub(crate) fn same_as(&self, other: &HalfSpace, eps: f64) -> bool {
        (self.offset - other.offset).abs() <= eps
            && self
                .normal
                .iter()
                .zip(&other.normal)
                .all(|(a, b)| (a - b).abs() <= eps)
    }
}

/// A facet: its supporting halfspace plus the vertices lying on it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Facet {
    pub halfspace: HalfSpace,
    /// Indices into the vertex list of the owning [`Polytope`](super::Polytope).
    pub incident_vertices: Vec<usize>,
}

impl Facet {
    pub fn normal(&self) -> &[f64] {
        &self.halfspace.normal
    }

    pub fn offset(&self) -> f64 {
        self.halfspace.offset
    }
}

/// Vertex description: `conv(vertices)`. The list may contain duplicates
/// or non-extreme points; those are dropped when facets are computed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolytopeV {
    pub dim: usize,
    pub vertices: Vec<Point>,
}

impl PolytopeV {
    pub fn new(dim: usize, vertices: Vec<Point>) -> Result<Self> {
        if dim < 2 {
            return Err(Error::invalid(format!("dimension must be at least 2, got {dim}")));
        }
        if vertices.is_empty() {
            return Err(Error::invalid("vertex list is empty"));
        }
        for v in &vertices {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: v.dim(),
                });
            }
            if v.iter().any(|x| !x.is_finite()) {
                return Err(Error::invalid("vertex coordinates must be finite"));
            }
        }
        Ok(Self { dim, vertices })
    }

    pub fn from_coords(coords: Vec<Vec<f64>>) -> Result<Self> {
        let dim = coords.first().map_or(0, Vec::len);
        Self::new(dim, coords.into_iter().map(Point::new).collect())
    }

    /// `max_v <v, theta>`.
    pub fn support(&self, theta: &[f64]) -> Result<f64> {
        check_dim(self.dim, theta.len())?;
        Ok(self
            .vertices
            .iter()
            .map(|v| linalg::dot(v, theta))
            .fold(f64::NEG_INFINITY, f64::max))
    }

    /// `max_v |v|`; the polytope lies in `R * B` iff this is at most `R`.
    pub fn circumradius_at_origin(&self) -> f64 {
        self.vertices.iter().map(Point::norm).fold(0.0, f64::max)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            dim: self.dim,
            vertices: self
                .vertices
                .iter()
                .map(|v| Point::new(linalg::scaled(v, s)))
                .collect(),
        }
    }

    pub(crate) fn coord_scale(&self) -> f64 {
        self.vertices
            .iter()
            .flat_map(|v| v.iter())
            .fold(1.0_f64, |m, x| m.max(x.abs()))
    }
}

/// Halfspace description: the intersection of `halfspaces`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolytopeH {
    pub dim: usize,
    pub halfspaces: Vec<HalfSpace>,
}

impl PolytopeH {
    /// Normalizes every halfspace and drops repeats within `tol.merge`.
    pub fn new(dim: usize, halfspaces: Vec<HalfSpace>, tol: Tolerance) -> Result<Self> {
        if dim < 2 {
            return Err(Error::invalid(format!("dimension must be at least 2, got {dim}")));
        }
        let mut kept: Vec<HalfSpace> = Vec::with_capacity(halfspaces.len());
        for h in halfspaces {
            check_dim(dim, h.dim())?;
            let h = HalfSpace::new(h.normal, h.offset)?;
            if !kept.iter().any(|k| k.same_as(&h, tol.merge)) {
                kept.push(h);
            }
        }
        if kept.is_empty() {
            return Err(Error::invalid("halfspace list is empty"));
        }
        Ok(Self {
            dim,
            halfspaces: kept,
        })
    }

    /// Largest `r` with `r * B` inside the polytope: the smallest offset.
    /// Non-positive values mean the origin is not an interior point.
    pub fn inradius_at_origin(&self) -> f64 {
        self.halfspaces
            .iter()
            .map(|h| h.offset)
            .fold(f64::INFINITY, f64::min)
    }

    fn require_interior_origin(&self, eps: f64) -> Result<()> {
        let r = self.inradius_at_origin();
        if r > eps {
            Ok(())
        } else {
            Err(Error::OriginNotInterior { inradius: r })
        }
    }

    /// `max{t >= 0 : t * theta in P}` for a unit `theta`.
    pub fn radial(&self, theta: &[f64]) -> Result<f64> {
        check_dim(self.dim, theta.len())?;
        check_unit(theta)?;
        self.require_interior_origin(Tolerance::default().geometric)?;
        Ok(self.radial_unchecked(theta))
    }

    pub(crate) fn radial_unchecked(&self, theta: &[f64]) -> f64 {
        self.halfspaces
            .iter()
            .filter_map(|h| {
                let c = linalg::dot(&h.normal, theta);
                (c > 0.0).then(|| h.offset / c)
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// `inf{t >= 0 : x in t * P}`.
    pub fn gauge(&self, x: &[f64]) -> Result<f64> {
        check_dim(self.dim, x.len())?;
        self.require_interior_origin(Tolerance::default().geometric)?;
        Ok(self.gauge_unchecked(x))
    }

    pub(crate) fn gauge_unchecked(&self, x: &[f64]) -> f64 {
        self.halfspaces
            .iter()
            .map(|h| linalg::dot(&h.normal, x) / h.offset)
            .fold(0.0, f64::max)
    }

    pub fn contains(&self, x: &[f64], eps: f64) -> bool {
        self.halfspaces.iter().all(|h| h.excess(x) <= eps)
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

pub(crate) fn check_unit(theta: &[f64]) -> Result<()> {
    let len = linalg::norm(theta);
    if (len - 1.0).abs() <= 1e-9 {
        Ok(())
    } else {
        Err(Error::invalid(format!("direction must be a unit vector, |theta| = {len}")))
    }
}
