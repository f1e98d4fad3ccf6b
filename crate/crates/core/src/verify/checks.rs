//! Facet-count checks on a concrete polytope.

use crate::covering::CoverBounds;
use crate::logscale::LogValue;
use crate::polytope::Polytope;

use super::bounds::{check_facet_bound, sandwich_bound, Provenance, FacetBoundInputs};
use super::report::{ClaimKind, ClaimReport, HypothesisCheck, Quantity, Verdict};

fn facet_log10(p: &Polytope) -> f64 {
    (p.facets().len() as f64).log10()
}

/// The facet lower bound evaluated at the certified upper bound `N_up`
/// (which implies it for the true covering number), plus an informational
/// comparison at the packing lower bound `N_low`.
pub fn check_theorem(p: &Polytope, bounds: &CoverBounds) -> Vec<ClaimReport> {
    let n = p.dim();
    let r = p.inradius_at_origin();
    let mut claims = Vec::with_capacity(2);
    match bounds.n_up {
        Some(up) => {
            let mut claim = check_facet_bound(&FacetBoundInputs {
                n,
                covering: up as u64,
                provenance: if bounds.is_exact() { Provenance::Exact } else { Provenance::Upper },
                r,
                facet_count_log10: facet_log10(p),
            });
            claim.lhs = Some(Quantity::Count(p.facets().len() as u64));
            claims.push(claim);
        }
        None => {
            let mut claim = ClaimReport::new(ClaimKind::FacetLowerBound);
            claim.hypotheses.push(HypothesisCheck {
                name: "certified covering upper bound available".into(),
                pass: false,
                value: 0.0,
                relation: "==",
                limit: 1.0,
            });
            claim.lhs = Some(Quantity::Count(p.facets().len() as u64));
            claims.push(claim);
        }
    }
    let mut low = check_facet_bound(&FacetBoundInputs {
        n,
        covering: bounds.n_low as u64,
        provenance: Provenance::Lower,
        r,
        facet_count_log10: facet_log10(p),
    });
    low.id = ClaimKind::FacetLowerBoundAtNLow;
    low.lhs = Some(Quantity::Count(p.facets().len() as u64));
    low.informational = true;
    low.notes.push("evaluated at the packing lower bound; stronger than the stated claim".into());
    claims.push(low);
    claims
}

/// `min(|F|, |V|) >= (1 / (2 (1 - r)))^{(n-1)/2}` for `r B inside P inside B`,
/// with `r` the inradius about the origin.
pub fn check_sandwich(p: &Polytope) -> ClaimReport {
    let n = p.dim();
    let r = p.inradius_at_origin();
    let big_r = p.circumradius_at_origin();
    let mut claim = ClaimReport::new(ClaimKind::SandwichBound);
    claim.hypotheses = vec![
        HypothesisCheck::at_least("n >= 3", n as f64, 3.0),
        HypothesisCheck::at_most("circumradius <= 1", big_r, 1.0 + p.eps()),
        HypothesisCheck::at_least("r >= 1 / sqrt(n - 1)", r, 1.0 / ((n as f64) - 1.0).sqrt()),
        HypothesisCheck::below("r < 1", r, 1.0),
    ];
    let smaller = p.facets().len().min(p.vertices().len()) as u64;
    claim.lhs = Some(Quantity::Count(smaller));
    claim.detail("facets", p.facets().len());
    claim.detail("vertices", p.vertices().len());
    claim.detail("inradius", r);
    claim.detail("circumradius", big_r);
    if !claim.hypotheses_hold() {
        return claim;
    }
    let Ok(rhs) = sandwich_bound(n, r) else {
        return claim;
    };
    let lhs = LogValue::from_value(smaller as f64);
    claim.verdict = if lhs.ln() >= rhs.ln() - 1e-12 { Verdict::Pass } else { Verdict::Fail };
    claim.with_rhs(rhs)
}
