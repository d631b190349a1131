//! Risk functionals, VC-dimension bound formulas, and confidence terms.

mod confidence;
mod risk;
mod vc;

pub use confidence::{confidence_term, confidence_term_general, srm_confidence, RiskBound};
pub use risk::{empirical_risk, entropy, kl_divergence, true_risk, MAX_EXACT_STATES};
pub use vc::{
    closed_form_bounds, ordered_family_h, vc_bound_graph, vc_bound_ordered,
    vc_bound_ordered_literal, vc_bound_unordered, VcBoundKind, VcBoundReport,
};
