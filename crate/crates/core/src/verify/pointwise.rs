//! Monte Carlo checks over directions nearly orthogonal to a covering.

use serde::Serialize;

use crate::covering::{verify_covering, CertificateMethod, CoverStatus, CoveringCertificate, GridOptions};
use crate::error::{Error, Result};
use crate::linalg;
use crate::logscale::LogValue;
use crate::polytope::{Point, Polytope};
use crate::sphere::sampling::map_draws;
use crate::sphere::{
    cone_complement_radial, near_orthogonal_exact_union_bound, near_orthogonal_lower_bound,
    sample_sphere, LowerBound, MeasureEstimate, NearOrthogonalSet, SeedStream,
};

use super::report::{ClaimKind, ClaimReport, MonteCarloInfo, Quantity, Verdict};

/// Absolute slack on inner products and radial values.
pub const TAU: f64 = 1e-9;
/// Conditioned sampling gives up below this acceptance rate.
pub const MIN_ACCEPTANCE: f64 = 1e-3;
const PILOT_DRAWS: u64 = 10_000;
const MIN_BATCH: u64 = 4096;
const MAX_BATCH: u64 = 1 << 22;

const STREAM_CONDITIONED: u64 = 1;
const STREAM_UNIFORM: u64 = 2;

/// Anything with a radial function about the origin.
pub trait RadialFunction: Sync {
    fn dim(&self) -> usize;
    /// `sup {t >= 0 : t theta in K}` for a unit `theta`.
    fn radial_at(&self, theta: &[f64]) -> f64;
}

impl RadialFunction for Polytope {
    fn dim(&self) -> usize {
        Polytope::dim(self)
    }

    fn radial_at(&self, theta: &[f64]) -> f64 {
        self.h_rep().radial_unchecked(theta)
    }
}

/// Union of polytopes that each contain the origin in their interior.
/// Star-shaped about the origin but not convex in general.
#[derive(Debug, Clone)]
pub struct StarUnion {
    parts: Vec<Polytope>,
}

impl StarUnion {
    pub fn new(parts: Vec<Polytope>) -> Result<Self> {
        let Some(first) = parts.first() else {
            return Err(Error::invalid("a union needs at least one part"));
        };
        let n = first.dim();
        for p in &parts {
            if p.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: p.dim(),
                });
            }
            let r = p.inradius_at_origin();
            if r <= p.eps() {
                return Err(Error::OriginNotInterior { inradius: r });
            }
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[Polytope] {
        &self.parts
    }

    /// Certified iff every part is covered by the same balls.
    pub fn verify_covering(&self, centers: &[Point], opts: GridOptions) -> Result<CoveringCertificate> {
        let mut cells = 0;
        let mut method = CertificateMethod::SingleBall;
        for p in &self.parts {
            let cert = verify_covering(p, centers, opts)?;
            if !cert.is_certified() {
                return Ok(cert);
            }
            cells += cert.cells_checked;
            if cert.method == CertificateMethod::Grid {
                method = CertificateMethod::Grid;
            }
        }
        Ok(CoveringCertificate {
            centers: centers.to_vec(),
            grid_delta: opts.delta,
            margin: opts.delta * (self.dim() as f64).sqrt() / 2.0,
            method,
            cells_checked: cells,
            status: CoverStatus::Certified,
        })
    }
}

impl RadialFunction for StarUnion {
    fn dim(&self) -> usize {
        self.parts[0].dim()
    }

    fn radial_at(&self, theta: &[f64]) -> f64 {
        self.parts
            .iter()
            .map(|p| p.radial_at(theta))
            .fold(0.0, f64::max)
    }
}

/// Accepted draws in index order, each with the value `f` computed on it.
#[derive(Debug, Clone)]
pub struct ConditionedDraws<T> {
    pub values: Vec<(u64, T)>,
    pub draws: u64,
}

/// Rejection-samples `target` directions from `set`, consuming draws in index
/// order, so the accepted set depends only on the seed.
pub fn sample_near_orthogonal<T, F>(
    set: &NearOrthogonalSet,
    target: u64,
    stream: &SeedStream,
    f: F,
) -> Result<ConditionedDraws<T>>
where
    T: Send,
    F: Fn(&[f64]) -> T + Sync,
{
    let mut values = Vec::with_capacity(target.min(1 << 20) as usize);
    let mut next = 0u64;
    let mut batch = target.clamp(MIN_BATCH, MAX_BATCH);
    while (values.len() as u64) < target {
        let results = map_draws(stream, next, batch, |_, rng| {
            let theta = sample_sphere(set.dim(), rng);
            set.contains(&theta).then(|| f(&theta))
        });
        for (k, r) in results.into_iter().enumerate() {
            if let Some(v) = r {
                values.push((next + k as u64, v));
                if values.len() as u64 == target {
                    let draws = next + k as u64 + 1;
                    return Ok(ConditionedDraws { values, draws });
                }
            }
        }
        next += batch;
        let rate = values.len() as f64 / next as f64;
        if next >= PILOT_DRAWS && rate < MIN_ACCEPTANCE {
            return Err(Error::AcceptanceTooLow {
                rate,
                floor: MIN_ACCEPTANCE,
                draws: next,
            });
        }
        let remaining = (target - values.len() as u64) as f64;
        let planned = (1.2 * remaining / rate.max(MIN_ACCEPTANCE)).ceil() as u64;
        batch = planned.clamp(MIN_BATCH, MAX_BATCH);
    }
    Ok(ConditionedDraws { values, draws: next })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointwiseOptions {
    pub epsilon: f64,
    /// Accepted directions for the pointwise checks and uniform draws for
    /// the measure checks.
    pub samples: u64,
    pub seed: u64,
}

fn require_certified(cert: &CoveringCertificate) -> Result<()> {
    if cert.is_certified() {
        Ok(())
    } else {
        Err(Error::CertificateNotCertified(cert.status.label().to_string()))
    }
}

fn measure_claim(id: ClaimKind, estimate: MeasureEstimate, bound: LowerBound, info: MonteCarloInfo) -> ClaimReport {
    let mut claim = ClaimReport::new(id);
    claim.lhs = Some(Quantity::Real(estimate.mean));
    claim.monte_carlo = Some(info);
    claim.detail("estimate", estimate);
    claim.detail("bound", bound.value);
    if bound.vacuous {
        claim.rhs = None;
        claim.verdict = Verdict::Vacuous;
        claim.notes.push("bound is non-positive".into());
        return claim;
    }
    claim.verdict = if estimate.mean >= bound.value - 3.0 * estimate.stderr {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    claim.with_rhs(LogValue::from_value(bound.value))
}

/// Checks on a body covered by the certified balls: every sampled direction
/// nearly orthogonal to the centers has radial value at most
/// `1/sqrt(1 - eps^2)`, and the measure of those directions matches both
/// union bounds.
pub fn check_radial_bound<B: RadialFunction>(
    body: &B,
    cert: &CoveringCertificate,
    opts: &PointwiseOptions,
) -> Result<Vec<ClaimReport>> {
    require_certified(cert)?;
    let n = body.dim();
    let set = NearOrthogonalSet::new(n, &cert.centers, opts.epsilon)?;
    let limit = cone_complement_radial(opts.epsilon)?;
    let stream = SeedStream::new(opts.seed);

    let conditioned = sample_near_orthogonal(&set, opts.samples, &stream.fork(STREAM_CONDITIONED), |theta| {
        body.radial_at(theta)
    })?;
    let mut pointwise = ClaimReport::new(ClaimKind::RadialPointwise);
    let exceptions: Vec<u64> = conditioned
        .values
        .iter()
        .filter(|(_, rho)| *rho > limit + TAU)
        .map(|(i, _)| *i)
        .collect();
    let max_radial = conditioned.values.iter().map(|(_, rho)| *rho).fold(0.0, f64::max);
    pointwise.lhs = Some(Quantity::Real(max_radial));
    pointwise.monte_carlo = Some(MonteCarloInfo {
        seed: opts.seed,
        draws: conditioned.draws,
        accepted: conditioned.values.len() as u64,
    });
    pointwise.detail("epsilon", opts.epsilon);
    pointwise.detail("exceptions", exceptions.len());
    pointwise.detail("first_exception_draw", exceptions.first());
    pointwise.detail("retained_centers", set.retained());
    pointwise.verdict = if exceptions.is_empty() { Verdict::Pass } else { Verdict::Fail };
    let pointwise = pointwise.with_rhs(LogValue::from_value(limit));

    let uniform = map_draws(&stream.fork(STREAM_UNIFORM), 0, opts.samples, |_, rng| {
        let theta = sample_sphere(n, rng);
        (set.contains(&theta), body.radial_at(&theta) <= limit + TAU)
    });
    let in_set = uniform.iter().filter(|u| u.0).count() as u64;
    let bounded = uniform.iter().filter(|u| u.1).count() as u64;
    let info = MonteCarloInfo {
        seed: opts.seed,
        draws: opts.samples,
        accepted: opts.samples,
    };
    let set_estimate = MeasureEstimate::from_hits(in_set, opts.samples, opts.seed);
    let radial_estimate = MeasureEstimate::from_hits(bounded, opts.samples, opts.seed);
    let count = cert.centers.len().max(1) as u64;
    let loose = near_orthogonal_lower_bound(count, n, opts.epsilon)?;
    let exact = near_orthogonal_exact_union_bound(set.retained() as u64, n, opts.epsilon)?;

    Ok(vec![
        pointwise,
        measure_claim(ClaimKind::RadialMeasure, radial_estimate, loose, info),
        measure_claim(ClaimKind::NearOrthogonalMeasure, set_estimate, loose, info),
        measure_claim(ClaimKind::NearOrthogonalExactUnion, set_estimate, exact, info),
    ])
}

/// The radial check for an arbitrary finite point set: every point must lie
/// in one of the unit balls, and every nonzero point whose direction is
/// nearly orthogonal to all centers must have norm at most `1/sqrt(1 - eps^2)`.
pub fn check_radial_bound_points(points: &[Point], centers: &[Point], epsilon: f64) -> Result<ClaimReport> {
    let Some(first) = points.first() else {
        return Err(Error::invalid("no points given"));
    };
    let n = first.dim();
    let set = NearOrthogonalSet::new(n, centers, epsilon)?;
    let limit = cone_complement_radial(epsilon)?;
    let mut in_set = 0usize;
    let mut exceptions = 0usize;
    let mut max_norm: f64 = 0.0;
    for (i, p) in points.iter().enumerate() {
        if p.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.dim(),
            });
        }
        let nearest = crate::covering::min_distance(p, centers);
        if nearest > 1.0 + TAU {
            return Err(Error::CertificateNotCertified(format!(
                "point {i} lies at distance {nearest} from every center"
            )));
        }
        let Some(dir) = linalg::normalized(p, 1e-12) else {
            continue;
        };
        if set.contains(&dir) {
            in_set += 1;
            max_norm = max_norm.max(p.norm());
            if p.norm() > limit + TAU {
                exceptions += 1;
            }
        }
    }
    let mut claim = ClaimReport::new(ClaimKind::RadialPointSet);
    claim.lhs = Some(Quantity::Real(max_norm));
    claim.detail("points", points.len());
    claim.detail("points_in_set", in_set);
    claim.detail("exceptions", exceptions);
    claim.verdict = if exceptions == 0 { Verdict::Pass } else { Verdict::Fail };
    Ok(claim.with_rhs(LogValue::from_value(limit)))
}

#[derive(Debug, Clone, Copy, Serialize)]
struct AlignmentSample {
    facet: usize,
    own: f64,
    best: f64,
}

/// For directions nearly orthogonal to the certified centers, the facet hit
/// by the ray has `<u_F, theta> >= r sqrt(1 - eps^2)`, where `r` is the
/// inradius of `body` about the origin; hence the facet normals form a net.
pub fn check_normal_alignment(
    body: &Polytope,
    cert: &CoveringCertificate,
    opts: &PointwiseOptions,
) -> Result<Vec<ClaimReport>> {
    require_certified(cert)?;
    let r = body.inradius_at_origin();
    if r <= body.eps() {
        return Err(Error::OriginNotInterior { inradius: r });
    }
    let n = body.dim();
    let set = NearOrthogonalSet::new(n, &cert.centers, opts.epsilon)?;
    let height = r * ((1.0 - opts.epsilon) * (1.0 + opts.epsilon)).sqrt();
    let stream = SeedStream::new(opts.seed);
    let conditioned = sample_near_orthogonal(&set, opts.samples, &stream.fork(STREAM_CONDITIONED), |theta| {
        let (facet, f) = body.facet_at_direction_unchecked(theta);
        let best = body
            .facets()
            .iter()
            .map(|g| linalg::dot(g.normal(), theta))
            .fold(f64::NEG_INFINITY, f64::max);
        AlignmentSample {
            facet,
            own: linalg::dot(f.normal(), theta),
            best,
        }
    })?;
    let info = MonteCarloInfo {
        seed: opts.seed,
        draws: conditioned.draws,
        accepted: conditioned.values.len() as u64,
    };
    let samples: Vec<AlignmentSample> = conditioned.values.iter().map(|(_, s)| *s).collect();
    let mut hit: Vec<usize> = samples.iter().map(|s| s.facet).collect();
    hit.sort_unstable();
    hit.dedup();

    let build = |id, pick: fn(&AlignmentSample) -> f64| {
        let mut claim = ClaimReport::new(id);
        let exceptions = samples.iter().filter(|s| pick(s) < height - TAU).count();
        let worst = samples.iter().map(pick).fold(f64::INFINITY, f64::min);
        claim.lhs = Some(Quantity::Real(worst));
        claim.monte_carlo = Some(info);
        claim.detail("epsilon", opts.epsilon);
        claim.detail("inradius", r);
        claim.detail("exceptions", exceptions);
        claim.detail("facets_hit", hit.len());
        claim.verdict = if exceptions == 0 { Verdict::Pass } else { Verdict::Fail };
        claim.with_rhs(LogValue::from_value(height))
    };
    Ok(vec![
        build(ClaimKind::NormalAlignment, |s| s.own),
        build(ClaimKind::NormalNet, |s| s.best),
    ])
}
