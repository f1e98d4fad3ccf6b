//! Closed-form facet-count bounds and the numeric steps that assemble them.

use crate::error::{Error, Result};
use crate::logscale::LogValue;
use crate::sphere::{near_orthogonal_lower_bound, sharp_cap_bound};

use super::report::{ClaimKind, ClaimReport, HypothesisCheck, Quantity, Verdict};

/// Where the covering number fed to a bound came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Exact,
    Upper,
    Lower,
}

/// Hypotheses of the main facet bound, in the order they are reported.
pub fn main_hypotheses(n: usize, covering: u64, r: f64) -> Vec<HypothesisCheck> {
    let nf = n as f64;
    vec![
        HypothesisCheck::at_least("n >= 3", nf, 3.0),
        HypothesisCheck::at_least("r >= 3 sqrt(3) / sqrt(n)", r, 3.0 * 3f64.sqrt() / nf.sqrt()),
        HypothesisCheck::at_most("r <= 1", r, 1.0),
        HypothesisCheck::at_least("N >= 3", covering as f64, 3.0),
        HypothesisCheck::below("log N < n / 8", (covering.max(1) as f64).ln(), nf / 8.0),
    ]
}

fn first_failure(checks: &[HypothesisCheck]) -> Option<&HypothesisCheck> {
    checks.iter().find(|h| !h.pass)
}

fn violated(h: &HypothesisCheck) -> Error {
    Error::HypothesisViolated(format!(
        "{} ({} {} {} fails)",
        h.name, h.value, h.relation, h.limit
    ))
}

/// `sqrt(4 log N / n)`; lies in `(0, 1/sqrt(2))` when `3 <= N < e^{n/8}`.
pub fn epsilon_choice(n: usize, covering: u64) -> Result<f64> {
    let nf = n as f64;
    let checks = [
        HypothesisCheck::at_least("N >= 3", covering as f64, 3.0),
        HypothesisCheck::below("log N < n / 8", (covering.max(1) as f64).ln(), nf / 8.0),
    ];
    if let Some(h) = first_failure(&checks) {
        return Err(violated(h));
    }
    Ok((4.0 * (covering as f64).ln() / nf).sqrt())
}

/// `(1 / (2 (1 - r sqrt(1 - 4 log N / n))))^{(n-1)/2}`, the lower bound on
/// the number of facets of a polytope containing `r B` with covering number `N`.
pub fn facet_lower_bound(n: usize, covering: u64, r: f64) -> Result<LogValue> {
    if let Some(h) = first_failure(&main_hypotheses(n, covering, r)) {
        return Err(violated(h));
    }
    Ok(facet_bound_unchecked(n, covering, r))
}

fn facet_bound_unchecked(n: usize, covering: u64, r: f64) -> LogValue {
    let nf = n as f64;
    let shrink = (1.0 - 4.0 * (covering as f64).ln() / nf).sqrt();
    let base_ln = -(2.0 * (1.0 - r * shrink)).ln();
    LogValue::from_ln(0.5 * (nf - 1.0) * base_ln)
}

/// True when `r in (1/2, 1]` and `log N <= n / 8`, the looser form of the
/// hypotheses, hold although the strict form does not.
pub fn only_loose_hypotheses_hold(n: usize, covering: u64, r: f64) -> bool {
    let strict = main_hypotheses(n, covering, r).iter().all(|h| h.pass);
    let loose = r > 0.5 && r <= 1.0 && (covering.max(1) as f64).ln() <= n as f64 / 8.0;
    loose && !strict
}

/// The bound before simplification:
/// `(1 - 2 e^{log N - n eps^2 / 2}) / sharp_cap_bound(n, r sqrt(1 - eps^2))`
/// at `eps = epsilon_choice(n, N)`.
pub fn assembled_bound(n: usize, covering: u64, r: f64) -> Result<LogValue> {
    let eps = epsilon_choice(n, covering)?;
    let measure = near_orthogonal_lower_bound(covering, n, eps)?;
    if measure.vacuous {
        return Err(Error::HypothesisViolated(
            "near-orthogonal measure bound is vacuous".into(),
        ));
    }
    let h = r * (1.0 - eps * eps).sqrt();
    let cap = sharp_cap_bound(n, h)?;
    Ok(LogValue::from_ln(measure.value.ln() - cap.ln()))
}

/// `(n / (8 log N))^{(n-1)/2}`, the form of the facet bound at `r = 1`
/// after `1 - sqrt(1 - x) <= x`.
pub fn simplified_facet_bound(n: usize, covering: u64) -> Result<LogValue> {
    let nf = n as f64;
    let checks = [
        HypothesisCheck::at_least("N >= 3", covering as f64, 3.0),
        HypothesisCheck::below("log N < n / 8", (covering.max(1) as f64).ln(), nf / 8.0),
    ];
    if let Some(h) = first_failure(&checks) {
        return Err(violated(h));
    }
    Ok(LogValue::from_ln(
        0.5 * (nf - 1.0) * (nf / (8.0 * (covering as f64).ln())).ln(),
    ))
}

/// `(1 / (2 (1 - r)))^{(n-1)/2}`, the facet and vertex lower bound for
/// polytopes with `r B inside P inside B`.
pub fn sandwich_bound(n: usize, r: f64) -> Result<LogValue> {
    if n < 3 {
        return Err(Error::HypothesisViolated(format!("n >= 3 fails for n = {n}")));
    }
    if r >= 1.0 {
        return Err(Error::DegenerateRadius(r));
    }
    let floor = 1.0 / ((n - 1) as f64).sqrt();
    if r < floor {
        return Err(Error::HypothesisViolated(format!(
            "r >= 1 / sqrt(n - 1) fails ({r} < {floor})"
        )));
    }
    Ok(LogValue::from_ln(-0.5 * (n as f64 - 1.0) * (2.0 * (1.0 - r)).ln()))
}

/// Claimed inputs to the main facet bound, for instances whose facet count
/// is known (or posited) without enumerating a polytope.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct FacetBoundInputs {
    pub n: usize,
    pub covering: u64,
    pub provenance: Provenance,
    pub r: f64,
    pub facet_count_log10: f64,
}

/// Evaluates `|F| > bound(n, N, r)` after gating on the hypotheses.
pub fn check_facet_bound(inputs: &FacetBoundInputs) -> ClaimReport {
    let mut claim = ClaimReport::new(ClaimKind::FacetLowerBound);
    claim.hypotheses = main_hypotheses(inputs.n, inputs.covering, inputs.r);
    claim.lhs = Some(Quantity::Log(LogValue::from_log10(inputs.facet_count_log10)));
    claim.detail("n", inputs.n);
    claim.detail("covering_number", inputs.covering);
    claim.detail("covering_provenance", inputs.provenance);
    claim.detail("r", inputs.r);
    if only_loose_hypotheses_hold(inputs.n, inputs.covering, inputs.r) {
        claim.notes.push(
            "inputs satisfy only the looser hypotheses r in (1/2, 1] and log N <= n/8".into(),
        );
    }
    if !claim.hypotheses_hold() {
        claim.verdict = Verdict::Skipped;
        return claim;
    }
    let rhs = facet_bound_unchecked(inputs.n, inputs.covering, inputs.r);
    claim.verdict = if inputs.facet_count_log10 > rhs.log10() {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    claim.with_rhs(rhs)
}

/// The numeric steps of the proof at `(n, N, r)`: the chosen epsilon lies in
/// `(0, 1/sqrt 2)`, the measure bound equals `1 - 2/N >= 1/3`, and the
/// assembled bound dominates the simplified one.
pub fn check_proof_steps(n: usize, covering: u64, r: f64) -> ClaimReport {
    let mut claim = ClaimReport::new(ClaimKind::ProofSteps);
    claim.hypotheses = main_hypotheses(n, covering, r);
    if !claim.hypotheses_hold() {
        return claim;
    }
    let eps = epsilon_choice(n, covering).expect("hypotheses checked");
    let measure = near_orthogonal_lower_bound(covering, n, eps).expect("valid epsilon");
    let identity = 1.0 - 2.0 / covering as f64;
    let assembled = assembled_bound(n, covering, r).expect("hypotheses checked");
    let rhs = facet_bound_unchecked(n, covering, r);

    let eps_ok = eps > 0.0 && eps < std::f64::consts::FRAC_1_SQRT_2;
    let identity_ok = (measure.value - identity).abs() <= 1e-12 && measure.value >= 1.0 / 3.0 - 1e-12;
    let assembly_ok = assembled.ln() >= rhs.ln() - 1e-12;
    claim.detail("epsilon", eps);
    claim.detail("measure_bound", measure.value);
    claim.detail("one_minus_two_over_n", identity);
    claim.detail("assembled_bound", assembled);
    claim.detail("epsilon_in_range", eps_ok);
    claim.detail("identity_holds", identity_ok);
    claim.detail("assembly_dominates", assembly_ok);
    claim.lhs = Some(Quantity::Log(assembled));
    claim.verdict = if eps_ok && identity_ok && assembly_ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    claim.with_rhs(rhs)
}

/// `simplified_facet_bound(n, N) <= facet_lower_bound(n, N, 1)`.
pub fn check_simplified_consistency(n: usize, covering: u64) -> ClaimReport {
    let mut claim = ClaimReport::new(ClaimKind::SimplifiedBoundConsistency);
    claim.hypotheses = main_hypotheses(n, covering, 1.0);
    if !claim.hypotheses_hold() {
        return claim;
    }
    let simplified = simplified_facet_bound(n, covering).expect("hypotheses checked");
    let full = facet_bound_unchecked(n, covering, 1.0);
    claim.lhs = Some(Quantity::Log(simplified));
    claim.verdict = if simplified.ln() <= full.ln() {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    claim.with_rhs(full)
}
