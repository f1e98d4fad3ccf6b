//! Checks of the facet-count bounds and their intermediate steps, each
//! returned as a structured report.

mod bounds;
mod checks;
mod pointwise;
mod report;

pub use bounds::{
    assembled_bound, check_facet_bound, check_proof_steps, check_simplified_consistency,
    epsilon_choice, facet_lower_bound, main_hypotheses, only_loose_hypotheses_hold,
    sandwich_bound, simplified_facet_bound, Provenance, FacetBoundInputs,
};
pub use checks::{check_sandwich, check_theorem};
pub use pointwise::{
    check_normal_alignment, check_radial_bound, check_radial_bound_points, sample_near_orthogonal,
    ConditionedDraws, PointwiseOptions, RadialFunction, StarUnion, MIN_ACCEPTANCE, TAU,
};
pub use report::{exit_status, ClaimKind, ClaimReport, HypothesisCheck, MonteCarloInfo, Quantity, Verdict};
