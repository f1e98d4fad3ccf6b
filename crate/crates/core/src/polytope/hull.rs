//! Facet enumeration for point sets in arbitrary dimension.
//!
//! Two independent routes:
//!
//! * [`wrap`]: pivoting around ridges. Starting from one facet, every ridge
//!   is rotated about until the hyperplane meets another input point, which
//!   yields the neighbouring facet. Ridges of a facet are the facets of the
//!   facet itself, computed by the same routine one dimension lower, so
//!   non-simplicial facets (cube faces) need no special casing. Work is
//!   proportional to `facets * ridges * points`.
//! * [`brute_force`]: every `d`-subset spans a candidate hyperplane, kept if
//!   all points lie on one side. Cost `binomial(m, d)`; used as an oracle and
//!   for tiny inputs.
//!
//! Both return facets keyed by the sorted set of incident input indices and
//! merge hyperplanes that agree within the merge tolerance.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::linalg::{self, OrthoBasis};

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct RawFacet {
    pub normal: Vec<f64>,
    pub offset: f64,
    /// Sorted indices of the points on the hyperplane.
    pub members: Vec<usize>,
}

struct Ridge {
    members: Vec<usize>,
    /// Unit vector orthogonal to the facet normal, pointing out of the facet
    /// across this ridge.
    outward: Vec<f64>,
}

fn contact(points: &[Vec<f64>], normal: &[f64], offset: f64, eps: f64) -> Vec<usize> {
    points
        .iter()
        .enumerate()
        .filter(|(_, p)| (linalg::dot(normal, p) - offset).abs() <= eps)
        .map(|(i, _)| i)
        .collect()
}

/// Rotates the supporting hyperplane with normal `normal` through `anchor`
/// towards `toward` until it first touches a point strictly below it.
fn rotate(points: &[Vec<f64>], normal: &[f64], toward: &[f64], anchor: &[f64], eps: f64) -> Vec<f64> {
    let mut best = f64::INFINITY;
    let (n0, t0) = (linalg::dot(normal, anchor), linalg::dot(toward, anchor));
    for p in points {
        let alpha = linalg::dot(normal, p) - n0;
        if alpha >= -eps {
            continue;
        }
        let beta = linalg::dot(toward, p) - t0;
        let phi = (-alpha).atan2(beta);
        if phi < best {
            best = phi;
        }
    }
    debug_assert!(best.is_finite(), "full-dimensional set always has a point below a facet");
    let (s, c) = best.sin_cos();
    normal
        .iter()
        .zip(toward)
        .map(|(a, w)| a * c + w * s)
        .collect()
}

/// Best-conditioned orthonormal basis of the directions spanned by `members`.
fn member_directions(points: &[Vec<f64>], members: &[usize], eps: f64) -> OrthoBasis {
    let origin = &points[members[0]];
    let diffs: Vec<Vec<f64>> = members[1..]
        .iter()
        .map(|&i| linalg::sub(&points[i], origin))
        .collect();
    let mut basis = OrthoBasis::new();
    let mut used = vec![false; diffs.len()];
    loop {
        let pick = diffs
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, d)| (i, linalg::norm(&basis.residual(d))))
            .max_by(|a, b| a.1.total_cmp(&b.1));
        match pick {
            Some((i, r)) if r > eps => {
                used[i] = true;
                basis.try_push(&diffs[i], 0.0);
            }
            _ => return basis,
        }
    }
}

/// Refits the hyperplane through `members` and recomputes contact.
fn refit(points: &[Vec<f64>], approx: Vec<f64>, members: Vec<usize>, eps: f64) -> RawFacet {
    let dim = approx.len();
    let basis = member_directions(points, &members, eps);
    if basis.len() + 1 != dim {
        let offset = linalg::dot(&approx, &points[members[0]]);
        return RawFacet {
            normal: approx,
            offset,
            members,
        };
    }
    let mut normal = basis.complement(dim).swap_remove(0);
    if linalg::dot(&normal, &approx) < 0.0 {
        normal.iter_mut().for_each(|x| *x = -*x);
    }
    let offset = members
        .iter()
        .map(|&i| linalg::dot(&normal, &points[i]))
        .sum::<f64>()
        / members.len() as f64;
    let refreshed = contact(points, &normal, offset, eps);
    let members = if member_directions(points, &refreshed, eps).len() + 1 == dim {
        refreshed
    } else {
        members
    };
    RawFacet {
        normal,
        offset,
        members,
    }
}

fn initial_facet(points: &[Vec<f64>], eps: f64) -> RawFacet {
    let dim = points[0].len();
    let mut normal = vec![0.0; dim];
    normal[0] = 1.0;
    let top = points
        .iter()
        .map(|p| p[0])
        .fold(f64::NEG_INFINITY, f64::max);
    let mut members = contact(points, &normal, top, eps);
    loop {
        let spanned = member_directions(points, &members, eps);
        if spanned.len() + 1 >= dim {
            break;
        }
        let mut basis = spanned;
        basis.try_push(&normal, 0.0);
        let toward = basis.complement(dim).swap_remove(0);
        let anchor = points[members[0]].clone();
        normal = rotate(points, &normal, &toward, &anchor, eps);
        let offset = linalg::dot(&normal, &anchor);
        members = contact(points, &normal, offset, eps);
    }
    refit(points, normal, members, eps)
}

/// Ridges of a facet with exactly `dim` affinely independent members: drop
/// one member at a time. `None` if the members are degenerate.
fn simplex_ridges(points: &[Vec<f64>], facet: &RawFacet, eps: f64) -> Option<Vec<Ridge>> {
    let dim = facet.normal.len();
    let mut out = Vec::with_capacity(dim);
    for j in 0..dim {
        let members: Vec<usize> = facet
            .members
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != j)
            .map(|(_, &i)| i)
            .collect();
        let mut basis = member_directions(points, &members, eps);
        if basis.len() + 2 != dim {
            return None;
        }
        basis.try_push(&facet.normal, 0.0);
        let away = linalg::sub(&points[members[0]], &points[facet.members[j]]);
        let outward = linalg::normalized(&basis.residual(&away), eps)?;
        out.push(Ridge { members, outward });
    }
    Some(out)
}

fn ridges(points: &[Vec<f64>], facet: &RawFacet, eps: f64) -> Result<Vec<Ridge>> {
    let dim = facet.normal.len();
    if facet.members.len() == dim {
        if let Some(r) = simplex_ridges(points, facet, eps) {
            return Ok(r);
        }
    }
    let mut basis = OrthoBasis::new();
    basis.try_push(&facet.normal, 0.0);
    let axes = basis.complement(dim);
    let anchor = &points[facet.members[0]];
    let projected: Vec<Vec<f64>> = facet
        .members
        .iter()
        .map(|&i| {
            let d = linalg::sub(&points[i], anchor);
            axes.iter().map(|e| linalg::dot(e, &d)).collect()
        })
        .collect();
    let sub = wrap(&projected, eps, usize::MAX)?;
    Ok(sub
        .into_iter()
        .map(|sf| {
            let mut outward = vec![0.0; dim];
            for (c, e) in sf.normal.iter().zip(&axes) {
                for (o, x) in outward.iter_mut().zip(e) {
                    *o += c * x;
                }
            }
            Ridge {
                members: sf.members.iter().map(|&j| facet.members[j]).collect(),
                outward,
            }
        })
        .collect())
}

/// Facets of `conv(points)`; the points must affinely span their space.
pub(crate) fn wrap(points: &[Vec<f64>], eps: f64, max_facets: usize) -> Result<Vec<RawFacet>> {
    let dim = points[0].len();
    if dim == 1 {
        let lo = points.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min);
        let hi = points.iter().map(|p| p[0]).fold(f64::NEG_INFINITY, f64::max);
        return Ok(vec![
            RawFacet {
                normal: vec![-1.0],
                offset: -lo,
                members: contact(points, &[-1.0], -lo, eps),
            },
            RawFacet {
                normal: vec![1.0],
                offset: hi,
                members: contact(points, &[1.0], hi, eps),
            },
        ]);
    }

    let first = initial_facet(points, eps);
    // Contact sets already pivoted to, and member sets of accepted facets.
    let mut probed: HashSet<Vec<usize>> = HashSet::new();
    let mut accepted: HashSet<Vec<usize>> = HashSet::new();
    probed.insert(first.members.clone());
    accepted.insert(first.members.clone());
    let mut facets = vec![first];
    let mut cursor = 0;
    while cursor < facets.len() {
        let facet = facets[cursor].clone();
        cursor += 1;
        for ridge in ridges(points, &facet, eps)? {
            let anchor = &points[ridge.members[0]];
            let normal = rotate(points, &facet.normal, &ridge.outward, anchor, eps);
            let offset = linalg::dot(&normal, anchor);
            let members = contact(points, &normal, offset, eps);
            if !probed.insert(members.clone()) {
                continue;
            }
            let next = refit(points, normal, members, eps);
            if !accepted.insert(next.members.clone()) {
                continue;
            }
            if facets.len() >= max_facets {
                return Err(Error::BudgetExceeded {
                    what: "facet enumeration (facets)",
                    required: (facets.len() + 1) as f64,
                    cap: max_facets as f64,
                });
            }
            facets.push(next);
        }
    }
    Ok(facets)
}

pub(crate) fn binomial(m: usize, k: usize) -> f64 {
    if k > m {
        return 0.0;
    }
    let k = k.min(m - k);
    (0..k).fold(1.0, |acc, i| acc * (m - i) as f64 / (i + 1) as f64)
}

/// Exhaustive `d`-subset scan.
pub(crate) fn brute_force(points: &[Vec<f64>], eps: f64, max_subsets: f64) -> Result<Vec<RawFacet>> {
    let m = points.len();
    let dim = points[0].len();
    let required = binomial(m, dim);
    if required > max_subsets {
        return Err(Error::BudgetExceeded {
            what: "facet enumeration (subsets)",
            required,
            cap: max_subsets,
        });
    }
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut facets = Vec::new();
    let mut idx: Vec<usize> = (0..dim).collect();
    loop {
        let origin = &points[idx[0]];
        let mut basis = OrthoBasis::new();
        for &i in &idx[1..] {
            basis.try_push(&linalg::sub(&points[i], origin), eps);
        }
        if basis.len() + 1 == dim {
            let normal = basis.complement(dim).swap_remove(0);
            let offset = linalg::dot(&normal, origin);
            let (mut above, mut below) = (false, false);
            for p in points {
                let s = linalg::dot(&normal, p) - offset;
                above |= s > eps;
                below |= s < -eps;
                if above && below {
                    break;
                }
            }
            if !(above && below) {
                let (normal, offset) = if above {
                    (linalg::scaled(&normal, -1.0), -offset)
                } else {
                    (normal, offset)
                };
                let members = contact(points, &normal, offset, eps);
                if seen.insert(members.clone()) {
                    facets.push(refit(points, normal, members, eps));
                }
            }
        }
        if !next_combination(&mut idx, m) {
            break;
        }
    }
    Ok(facets)
}

pub(crate) fn next_combination(idx: &mut [usize], m: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < m - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Unifies facets whose hyperplanes agree within `merge`. Output is ordered
/// by offset.
pub(crate) fn merge_coplanar(mut facets: Vec<RawFacet>, merge: f64) -> Vec<RawFacet> {
    facets.sort_by(|a, b| a.offset.total_cmp(&b.offset));
    let mut out: Vec<RawFacet> = Vec::with_capacity(facets.len());
    'outer: for f in facets {
        for g in out.iter_mut().rev() {
            if g.offset < f.offset - merge {
                break;
            }
            if g.normal.iter().zip(&f.normal).all(|(a, b)| (a - b).abs() <= merge) {
                g.members.extend(&f.members);
                g.members.sort_unstable();
                g.members.dedup();
                continue 'outer;
            }
        }
        out.push(f);
    }
    out
}
