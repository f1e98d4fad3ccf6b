use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg;
use crate::polytope::{Point, Polytope};

/// Axis-aligned grid of cubical cells of side `delta` over a bounding box.
#[derive(Debug, Clone)]
pub(crate) struct Grid {
    lo: Vec<f64>,
    delta: f64,
    counts: Vec<u64>,
    total: u64,
}

impl Grid {
    pub fn over(body: &Polytope, delta: f64, max_cells: f64) -> Result<Self> {
        if !(delta.is_finite() && delta > 0.0) {
            return Err(Error::invalid(format!("grid spacing must be positive, got {delta}")));
        }
        let (lo, hi) = body.bounding_box();
        let counts: Vec<u64> = lo
            .iter()
            .zip(&hi)
            .map(|(l, h)| (((h - l) / delta).ceil() as u64).max(1))
            .collect();
        let required: f64 = counts.iter().map(|&c| c as f64).product();
        if required > max_cells {
            return Err(Error::BudgetExceeded {
                what: "grid certification (cells)",
                required,
                cap: max_cells,
            });
        }
        Ok(Self {
            lo,
            delta,
            counts,
            total: required as u64,
        })
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn center(&self, mut index: u64) -> Vec<f64> {
        let mut g = Vec::with_capacity(self.lo.len());
        for (l, &c) in self.lo.iter().zip(&self.counts) {
            let j = index % c;
            index /= c;
            g.push(l + (j as f64 + 0.5) * self.delta);
        }
        g
    }

    /// Conservative test: false only if the cell around `g` misses `body`.
    pub fn cell_may_meet(&self, body: &Polytope, g: &[f64]) -> bool {
        let half = 0.5 * self.delta;
        let eps = body.eps();
        body.h_rep().halfspaces.iter().all(|h| {
            let l1: f64 = h.normal.iter().map(|a| a.abs()).sum();
            h.excess(g) - half * l1 <= eps
        })
    }

    /// Centers of all cells that may meet `body`, in index order.
    pub fn relevant_centers(&self, body: &Polytope) -> Vec<Vec<f64>> {
        (0..self.total)
            .into_par_iter()
            .filter_map(|i| {
                let g = self.center(i);
                self.cell_may_meet(body, &g).then_some(g)
            })
            .collect()
    }
}

pub(crate) fn min_distance(x: &[f64], centers: &[Point]) -> f64 {
    centers
        .iter()
        .map(|c| linalg::dist(x, c))
        .fold(f64::INFINITY, f64::min)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CoverStatus {
    Certified,
    /// `witness` lies in the body and is farther than 1 from every center.
    Refuted { witness: Vec<f64>, distance: f64 },
    /// Some cells could be neither certified nor refuted at this spacing.
    Inconclusive { unresolved_cells: u64 },
}

impl CoverStatus {
    pub fn label(&self) -> &'static str {
        match self {
            CoverStatus::Certified => "certified",
            CoverStatus::Refuted { .. } => "refuted",
            CoverStatus::Inconclusive { .. } => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateMethod {
    /// A vertex of the body lies outside every ball.
    VertexScan,
    /// Every vertex lies in one ball, so the hull does too.
    SingleBall,
    /// Every cell meeting the body has its center within `1 - margin` of a center.
    Grid,
}

/// Proof (or disproof) that unit balls around `centers` cover a body.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoveringCertificate {
    pub centers: Vec<Point>,
    pub grid_delta: f64,
    /// `grid_delta * sqrt(n) / 2`: no point of a cell is farther than this from its center.
    pub margin: f64,
    pub method: CertificateMethod,
    pub cells_checked: u64,
    pub status: CoverStatus,
}

impl CoveringCertificate {
    pub fn is_certified(&self) -> bool {
        self.status == CoverStatus::Certified
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridOptions {
    pub delta: f64,
    pub max_cells: f64,
}

impl GridOptions {
    /// Spacing with `delta * sqrt(n) / 2 = 0.05`.
    pub fn for_dim(n: usize) -> Self {
        Self {
            delta: 0.1 / (n as f64).sqrt(),
            max_cells: 1e8,
        }
    }
}

enum CellVerdict {
    Outside,
    Covered,
    Witness(Vec<f64>, f64),
    Unresolved,
}

/// Checks whether unit balls around `centers` cover `body`.
pub fn verify_covering(body: &Polytope, centers: &[Point], opts: GridOptions) -> Result<CoveringCertificate> {
    let n = body.dim();
    for c in centers {
        if c.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: c.dim(),
            });
        }
    }
    let eps = body.eps();
    let margin = opts.delta * (n as f64).sqrt() / 2.0;
    let certificate = |method, cells_checked, status| CoveringCertificate {
        centers: centers.to_vec(),
        grid_delta: opts.delta,
        margin,
        method,
        cells_checked,
        status,
    };

    for v in body.vertices() {
        let d = min_distance(v, centers);
        if d > 1.0 + eps {
            return Ok(certificate(
                CertificateMethod::VertexScan,
                0,
                CoverStatus::Refuted {
                    witness: v.to_vec(),
                    distance: d,
                },
            ));
        }
    }
    let single = centers.iter().any(|c| {
        body.vertices()
            .iter()
            .all(|v| linalg::dist(v, c) <= 1.0 + eps)
    });
    if single {
        return Ok(certificate(CertificateMethod::SingleBall, 0, CoverStatus::Certified));
    }

    let grid = Grid::over(body, opts.delta, opts.max_cells)?;
    let verdicts: Vec<CellVerdict> = (0..grid.total())
        .into_par_iter()
        .map(|i| {
            let g = grid.center(i);
            if !grid.cell_may_meet(body, &g) {
                return CellVerdict::Outside;
            }
            let d = min_distance(&g, centers);
            if d <= 1.0 - margin {
                CellVerdict::Covered
            } else if d > 1.0 + eps && body.contains(&g) {
                CellVerdict::Witness(g, d)
            } else {
                CellVerdict::Unresolved
            }
        })
        .collect();

    let mut checked = 0;
    let mut unresolved = 0;
    for v in verdicts {
        match v {
            CellVerdict::Outside => {}
            CellVerdict::Covered => checked += 1,
            CellVerdict::Unresolved => {
                checked += 1;
                unresolved += 1;
            }
            CellVerdict::Witness(witness, distance) => {
                return Ok(certificate(
                    CertificateMethod::Grid,
                    checked + 1,
                    CoverStatus::Refuted { witness, distance },
                ));
            }
        }
    }
    let status = if unresolved == 0 {
        CoverStatus::Certified
    } else {
        CoverStatus::Inconclusive {
            unresolved_cells: unresolved,
        }
    };
    Ok(certificate(CertificateMethod::Grid, checked, status))
}
