use serde::Serialize;
use std::collections::BTreeMap;

use crate::logscale::LogValue;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    /// A hypothesis did not hold, so the inequality was not evaluated.
    Skipped,
    /// The bound is non-positive and holds trivially.
    Vacuous,
}

/// Every claim a report can carry, with the label of the statement it checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimKind {
    FacetLowerBound,
    FacetLowerBoundAtNLow,
    ProofSteps,
    SandwichBound,
    RadialPointwise,
    RadialPointSet,
    RadialMeasure,
    NearOrthogonalMeasure,
    NearOrthogonalExactUnion,
    NormalAlignment,
    NormalNet,
    SimplifiedBoundConsistency,
    CapBoundDomination,
}

impl ClaimKind {
    pub fn anchor(self) -> &'static str {
        match self {
            ClaimKind::FacetLowerBound | ClaimKind::FacetLowerBoundAtNLow => "Theorem 1",
            ClaimKind::ProofSteps => "Theorem 1 (proof)",
            ClaimKind::NormalNet => "Theorem 1 (net step)",
            ClaimKind::SandwichBound => "Prop 1",
            ClaimKind::RadialPointwise | ClaimKind::RadialMeasure => "Prop 3",
            ClaimKind::RadialPointSet => "Prop 3 (remark)",
            ClaimKind::NearOrthogonalMeasure | ClaimKind::NearOrthogonalExactUnion => "Eq. (2)",
            ClaimKind::NormalAlignment => "Prop 4",
            ClaimKind::SimplifiedBoundConsistency => "Remark 6",
            ClaimKind::CapBoundDomination => "Prop 2, Lemma 5",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HypothesisCheck {
    pub name: String,
    pub pass: bool,
    pub value: f64,
    pub relation: &'static str,
    pub limit: f64,
}

impl HypothesisCheck {
    pub fn at_least(name: &str, value: f64, limit: f64) -> Self {
        Self {
            name: name.to_string(),
            pass: value >= limit,
            value,
            relation: ">=",
            limit,
        }
    }

    pub fn at_most(name: &str, value: f64, limit: f64) -> Self {
        Self {
            name: name.to_string(),
            pass: value <= limit,
            value,
            relation: "<=",
            limit,
        }
    }

    pub fn below(name: &str, value: f64, limit: f64) -> Self {
        Self {
            name: name.to_string(),
            pass: value < limit,
            value,
            relation: "<",
            limit,
        }
    }
}

/// Left-hand side of a checked inequality.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Quantity {
    Count(u64),
    Real(f64),
    Log(LogValue),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonteCarloInfo {
    pub seed: u64,
    pub draws: u64,
    pub accepted: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimReport {
    pub id: ClaimKind,
    pub paper_anchor: &'static str,
    pub hypotheses: Vec<HypothesisCheck>,
    pub lhs: Option<Quantity>,
    pub rhs_log10: Option<f64>,
    pub rhs: Option<LogValue>,
    pub verdict: Verdict,
    /// Reported for context; excluded from the run's exit status.
    pub informational: bool,
    pub monte_carlo: Option<MonteCarloInfo>,
    pub details: BTreeMap<String, serde_json::Value>,
    pub notes: Vec<String>,
}

impl ClaimReport {
    pub fn new(id: ClaimKind) -> Self {
        Self {
            id,
            paper_anchor: id.anchor(),
            hypotheses: Vec::new(),
            lhs: None,
            rhs_log10: None,
            rhs: None,
            verdict: Verdict::Skipped,
            informational: false,
            monte_carlo: None,
            details: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|h| h.pass)
    }

    pub fn with_rhs(mut self, rhs: LogValue) -> Self {
        self.rhs_log10 = Some(rhs.log10());
        self.rhs = Some(rhs);
        self
    }

    pub fn detail(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).unwrap_or(serde_json::Value::Null);
        self.details.insert(key.to_string(), v);
    }

    pub fn passed(&self) -> bool {
        matches!(self.verdict, Verdict::Pass | Verdict::Vacuous)
    }
}

/// Exit status over a set of claims: 1 if any counted claim failed, 2 if
/// any was skipped on a hypothesis, 0 otherwise.
pub fn exit_status(claims: &[ClaimReport]) -> i32 {
    let counted = claims.iter().filter(|c| !c.informational);
    let mut status = 0;
    for c in counted {
        match c.verdict {
            Verdict::Fail => return 1,
            Verdict::Skipped => status = 2,
            Verdict::Pass | Verdict::Vacuous => {}
        }
    }
    status
}
