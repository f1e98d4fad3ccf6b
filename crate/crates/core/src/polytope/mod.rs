//! Convex polytopes with 0 in the interior: both descriptions, metric
//! functionals about the origin, polar duality and the facet met by a ray.

mod hull;
pub mod io;
mod types;

pub use types::{Facet, HalfSpace, Point, PolytopeH, PolytopeV, Tolerance};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, OrthoBasis};
use hull::RawFacet;
pub(crate) use hull::{binomial, next_combination};
use types::{check_dim, check_unit};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HullMethod {
    /// Ridge pivoting; cost grows with the output size.
    Pivoting,
    /// Scan of all `dim`-subsets of the vertex list.
    Exhaustive,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnumerationOptions {
    pub tolerance: Tolerance,
    pub method: HullMethod,
    /// Cap on `binomial(m, n)` for [`HullMethod::Exhaustive`].
    pub max_subsets: f64,
    /// Cap on the number of facets for [`HullMethod::Pivoting`].
    pub max_facets: usize,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        Self {
            tolerance: Tolerance::default(),
            method: HullMethod::Pivoting,
            max_subsets: 1e7,
            max_facets: 1_000_000,
        }
    }
}

impl EnumerationOptions {
    pub fn exhaustive() -> Self {
        Self {
            method: HullMethod::Exhaustive,
            ..Self::default()
        }
    }
}

/// Facets of `conv(P)`, each listing its incident extreme points by index
/// into `p.vertices`. Duplicates and non-extreme points never appear as
/// incident vertices.
pub fn facet_enumeration(p: &PolytopeV, opts: &EnumerationOptions) -> Result<Vec<Facet>> {
    let (raw, extreme) = enumerate_raw(p, opts)?;
    let mut facets: Vec<Facet> = raw
        .into_iter()
        .map(|f| Facet {
            halfspace: HalfSpace {
                normal: f.normal,
                offset: f.offset,
            },
            incident_vertices: f
                .members
                .into_iter()
                .map(|i| extreme.kept[i])
                .filter(|&orig| extreme.is_extreme[orig])
                .collect(),
        })
        .collect();
    sort_canonical(&mut facets);
    Ok(facets)
}

struct Extremality {
    /// Deduplicated point index -> index in the input list.
    kept: Vec<usize>,
    /// Indexed by input position.
    is_extreme: Vec<bool>,
}

fn enumerate_raw(p: &PolytopeV, opts: &EnumerationOptions) -> Result<(Vec<RawFacet>, Extremality)> {
    let eps = opts.tolerance.geometric * p.coord_scale();
    let merge = opts.tolerance.merge * p.coord_scale();

    let mut kept: Vec<usize> = Vec::new();
    for (i, v) in p.vertices.iter().enumerate() {
        let dup = kept.iter().any(|&j| {
            p.vertices[j]
                .iter()
                .zip(v.iter())
                .all(|(a, b)| (a - b).abs() <= eps)
        });
        if !dup {
            kept.push(i);
        }
    }
    let points: Vec<Vec<f64>> = kept.iter().map(|&i| p.vertices[i].to_vec()).collect();
    let rank = linalg::affine_rank(&points, eps);
    if rank < p.dim {
        return Err(Error::NotFullDimensional { rank, dim: p.dim });
    }

    let raw = match opts.method {
        HullMethod::Pivoting => hull::wrap(&points, eps, opts.max_facets)?,
        HullMethod::Exhaustive => hull::brute_force(&points, eps, opts.max_subsets)?,
    };
    let raw = hull::merge_coplanar(raw, merge);

    // A point is a vertex iff the normals of the facets through it span R^n.
    let mut incident: Vec<OrthoBasis> = vec![OrthoBasis::new(); points.len()];
    for f in &raw {
        for &i in &f.members {
            if incident[i].len() < p.dim {
                incident[i].try_push(&f.normal, opts.tolerance.merge);
            }
        }
    }
    let mut is_extreme = vec![false; p.vertices.len()];
    for (local, basis) in incident.iter().enumerate() {
        if basis.len() == p.dim {
            is_extreme[kept[local]] = true;
        }
    }
    Ok((raw, Extremality { kept, is_extreme }))
}

fn sort_canonical(facets: &mut [Facet]) {
    fn snap(x: f64) -> f64 {
        if x.abs() < 1e-12 {
            0.0
        } else {
            x
        }
    }
    facets.sort_by(|a, b| {
        a.normal()
            .iter()
            .zip(b.normal())
            .map(|(x, y)| snap(*x).total_cmp(&snap(*y)))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(snap(a.offset()).total_cmp(&snap(b.offset())))
    });
    for f in facets.iter_mut() {
        f.incident_vertices.sort_unstable();
    }
}

/// A full-dimensional polytope held in both descriptions: its extreme
/// points and its facets, sorted lexicographically by outer normal.
#[derive(Debug, Clone, Serialize)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Point>,
    facets: Vec<Facet>,
    #[serde(skip)]
    halfspaces: PolytopeH,
    #[serde(skip)]
    tolerance: Tolerance,
    #[serde(skip)]
    scale: f64,
}

impl Polytope {
    pub fn from_vertices(p: &PolytopeV, opts: &EnumerationOptions) -> Result<Self> {
        let facets = facet_enumeration(p, opts)?;
        let mut remap = vec![usize::MAX; p.vertices.len()];
        let mut vertices = Vec::new();
        for f in &facets {
            for &i in &f.incident_vertices {
                remap[i] = 0;
            }
        }
        for (i, slot) in remap.iter_mut().enumerate() {
            if *slot == 0 {
                *slot = vertices.len();
                vertices.push(p.vertices[i].clone());
            }
        }
        let facets: Vec<Facet> = facets
            .into_iter()
            .map(|f| Facet {
                incident_vertices: f.incident_vertices.iter().map(|&i| remap[i]).collect(),
                halfspace: f.halfspace,
            })
            .collect();
        let halfspaces = PolytopeH {
            dim: p.dim,
            halfspaces: facets.iter().map(|f| f.halfspace.clone()).collect(),
        };
        let scale = PolytopeV {
            dim: p.dim,
            vertices: vertices.clone(),
        }
        .coord_scale();
        Ok(Self {
            dim: p.dim,
            vertices,
            facets,
            halfspaces,
            tolerance: opts.tolerance,
            scale,
        })
    }

    /// Vertex enumeration through the polar: the facets of
    /// `conv{a_i / b_i}` are the vertices of `{x : <a_i, x> <= b_i}`.
    /// Requires 0 in the interior and a bounded intersection.
    pub fn from_halfspaces(h: &PolytopeH, opts: &EnumerationOptions) -> Result<Self> {
        let eps = opts.tolerance.geometric;
        let r = h.inradius_at_origin();
        if r <= eps {
            return Err(Error::OriginNotInterior { inradius: r });
        }
        let polar_points: Vec<Point> = h
            .halfspaces
            .iter()
            .map(|hs| Point::new(linalg::scaled(&hs.normal, 1.0 / hs.offset)))
            .collect();
        let polar = PolytopeV::new(h.dim, polar_points)?;
        let polar_facets = facet_enumeration(&polar, opts).map_err(|e| match e {
            Error::NotFullDimensional { .. } => Error::invalid("halfspace intersection is unbounded"),
            other => other,
        })?;
        let mut vertices = Vec::with_capacity(polar_facets.len());
        for f in &polar_facets {
            if f.offset() <= eps {
                return Err(Error::invalid("halfspace intersection is unbounded"));
            }
            vertices.push(Point::new(linalg::scaled(f.normal(), 1.0 / f.offset())));
        }
        Self::from_vertices(&PolytopeV::new(h.dim, vertices)?, opts)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn tolerance(&self) -> Tolerance {
        self.tolerance
    }

    /// Absolute incidence tolerance for this polytope's coordinate scale.
    pub fn eps(&self) -> f64 {
        self.tolerance.geometric * self.scale
    }

    pub fn h_rep(&self) -> &PolytopeH {
        &self.halfspaces
    }

    pub fn v_rep(&self) -> PolytopeV {
        PolytopeV {
            dim: self.dim,
            vertices: self.vertices.clone(),
        }
    }

    pub fn support(&self, theta: &[f64]) -> Result<f64> {
        check_dim(self.dim, theta.len())?;
        check_unit(theta)?;
        Ok(self
            .vertices
            .iter()
            .map(|v| linalg::dot(v, theta))
            .fold(f64::NEG_INFINITY, f64::max))
    }

    pub fn radial(&self, theta: &[f64]) -> Result<f64> {
        self.halfspaces.radial(theta)
    }

    pub fn gauge(&self, x: &[f64]) -> Result<f64> {
        self.halfspaces.gauge(x)
    }

    pub fn inradius_at_origin(&self) -> f64 {
        self.halfspaces.inradius_at_origin()
    }

    pub fn circumradius_at_origin(&self) -> f64 {
        self.vertices.iter().map(Point::norm).fold(0.0, f64::max)
    }

    /// Membership up to the polytope's incidence tolerance.
    pub fn contains(&self, x: &[f64]) -> bool {
        self.halfspaces.contains(x, self.eps())
    }

    /// Axis-aligned bounding box `(lo, hi)` of the vertices.
    pub fn bounding_box(&self) -> (Vec<f64>, Vec<f64>) {
        let mut lo = vec![f64::INFINITY; self.dim];
        let mut hi = vec![f64::NEG_INFINITY; self.dim];
        for v in &self.vertices {
            for k in 0..self.dim {
                lo[k] = lo[k].min(v[k]);
                hi[k] = hi[k].max(v[k]);
            }
        }
        (lo, hi)
    }

    fn require_interior_origin(&self) -> Result<()> {
        let r = self.inradius_at_origin();
        if r > self.eps() {
            Ok(())
        } else {
            Err(Error::OriginNotInterior { inradius: r })
        }
    }

    /// The facet containing `radial(theta) * theta`. On ridges, where
    /// several facets contain that point, the lowest index wins.
    pub fn facet_at_direction(&self, theta: &[f64]) -> Result<(usize, &Facet)> {
        check_dim(self.dim, theta.len())?;
        check_unit(theta)?;
        self.require_interior_origin()?;
        Ok(self.facet_at_direction_unchecked(theta))
    }

    pub(crate) fn facet_at_direction_unchecked(&self, theta: &[f64]) -> (usize, &Facet) {
        let rho = self.halfspaces.radial_unchecked(theta);
        let boundary = linalg::scaled(theta, rho);
        let eps = self.eps();
        let idx = self
            .facets
            .iter()
            .position(|f| f.halfspace.excess(&boundary).abs() <= eps)
            .unwrap_or_else(|| {
                // Unreachable for finite rho; kept total for safety of callers.
                self.facets
                    .iter()
                    .enumerate()
                    .map(|(i, f)| (i, f.halfspace.excess(&boundary).abs()))
                    .min_by(|a, b| a.1.total_cmp(&b.1))
                    .map(|(i, _)| i)
                    .unwrap_or(0)
            });
        (idx, &self.facets[idx])
    }

    /// `P° = {y : <v, y> <= 1 for all vertices v}`, as a halfspace list.
    pub fn polar_dual(&self) -> Result<PolytopeH> {
        self.require_interior_origin()?;
        let halfspaces = self
            .vertices
            .iter()
            .map(|v| HalfSpace::new(v.to_vec(), 1.0))
            .collect::<Result<Vec<_>>>()?;
        PolytopeH::new(self.dim, halfspaces, self.tolerance)
    }

    /// `P°` with both descriptions: its vertices are `a / b` over the facets of `P`.
    pub fn polar(&self) -> Result<Polytope> {
        self.require_interior_origin()?;
        let vertices = self
            .facets
            .iter()
            .map(|f| Point::new(linalg::scaled(f.normal(), 1.0 / f.offset())))
            .collect();
        let opts = EnumerationOptions {
            tolerance: self.tolerance,
            ..EnumerationOptions::default()
        };
        Polytope::from_vertices(&PolytopeV::new(self.dim, vertices)?, &opts)
    }

    /// `s * P` for `s > 0`.
    pub fn scale(&self, s: f64) -> Result<Polytope> {
        if !(s.is_finite() && s > 0.0) {
            return Err(Error::invalid(format!("scale factor must be positive, got {s}")));
        }
        let opts = EnumerationOptions {
            tolerance: self.tolerance,
            ..EnumerationOptions::default()
        };
        Polytope::from_vertices(&self.v_rep().scale(s), &opts)
    }

    /// `P + shift`. The origin may leave the interior.
    pub fn translate(&self, shift: &[f64]) -> Result<Polytope> {
        check_dim(self.dim, shift.len())?;
        let vertices = self
            .vertices
            .iter()
            .map(|v| Point::new(linalg::add(v, shift)))
            .collect();
        let opts = EnumerationOptions {
            tolerance: self.tolerance,
            ..EnumerationOptions::default()
        };
        Polytope::from_vertices(&PolytopeV::new(self.dim, vertices)?, &opts)
    }

    /// Average of each facet's incident vertices.
    pub fn facet_centroids(&self) -> Vec<Point> {
        self.facets
            .iter()
            .map(|f| {
                let mut c = vec![0.0; self.dim];
                for &i in &f.incident_vertices {
                    for (ck, vk) in c.iter_mut().zip(self.vertices[i].iter()) {
                        *ck += vk;
                    }
                }
                let k = f.incident_vertices.len().max(1) as f64;
                Point::new(linalg::scaled(&c, 1.0 / k))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube3() -> Polytope {
        let mut v = Vec::new();
        for mask in 0..8u32 {
            v.push((0..3).map(|k| if mask >> k & 1 == 1 { 1.0 } else { -1.0 }).collect());
        }
        Polytope::from_vertices(&PolytopeV::from_coords(v).unwrap(), &EnumerationOptions::default()).unwrap()
    }

    #[test]
    fn cube_facets_and_functionals() {
        let c = cube3();
        assert_eq!(c.facets().len(), 6);
        assert_eq!(c.vertices().len(), 8);
        assert_eq!(c.facets()[0].normal(), &[-1.0, 0.0, 0.0]);
        assert!((c.inradius_at_origin() - 1.0).abs() < 1e-12);
        assert!((c.circumradius_at_origin() - 3f64.sqrt()).abs() < 1e-12);
        assert!((c.gauge(&[0.5, 0.0, 0.0]).unwrap() - 0.5).abs() < 1e-12);
        assert_eq!(c.gauge(&[0.0; 3]).unwrap(), 0.0);
        for f in c.facets() {
            assert_eq!(f.incident_vertices.len(), 4);
        }
    }

    #[test]
    fn flat_input_is_rejected() {
        let p = PolytopeV::from_coords(vec![
            vec![0.0, 0.0, 0.0],
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![1.0, 1.0, 0.0],
        ])
        .unwrap();
        let err = Polytope::from_vertices(&p, &EnumerationOptions::default()).unwrap_err();
        assert_eq!(err, Error::NotFullDimensional { rank: 2, dim: 3 });
    }

    #[test]
    fn duplicates_and_interior_points_are_dropped() {
        let p = PolytopeV::from_coords(vec![
            vec![1.0, 1.0],
            vec![1.0, 1.0],
            vec![-1.0, 1.0],
            vec![0.1, 0.2],
            vec![-1.0, -1.0],
            vec![1.0, -1.0],
            vec![0.0, 1.0],
        ])
        .unwrap();
        let facets = facet_enumeration(&p, &EnumerationOptions::default()).unwrap();
        assert_eq!(facets.len(), 4);
        for f in &facets {
            assert!(f.incident_vertices.iter().all(|&i| i != 1 && i != 3 && i != 6));
        }
        let poly = Polytope::from_vertices(&p, &EnumerationOptions::default()).unwrap();
        assert_eq!(poly.vertices().len(), 4);
    }

    #[test]
    fn origin_outside_is_reported() {
        let c = cube3().translate(&[3.0, 0.0, 0.0]).unwrap();
        assert!(c.inradius_at_origin() < 0.0);
        assert!(matches!(
            c.radial(&[1.0, 0.0, 0.0]),
            Err(Error::OriginNotInterior { .. })
        ));
        assert!(matches!(c.polar_dual(), Err(Error::OriginNotInterior { .. })));
    }

    #[test]
    fn non_unit_direction_is_rejected() {
        assert!(cube3().radial(&[2.0, 0.0, 0.0]).is_err());
        assert!(matches!(
            cube3().support(&[1.0, 0.0]),
            Err(Error::DimensionMismatch { expected: 3, found: 2 })
        ));
    }
}
