//! Learning Bayesian networks of bounded in-degree from categorical data,
//! with distribution-free risk certificates.
//!
//! The crate fits per-node conditional probability tables by cutoff-floored
//! maximum likelihood, scores structures by empirical negative log-likelihood,
//! bounds the gap to true risk through VC-dimension counts of the structure
//! family, and selects the in-degree/cutoff trade-off by structural risk
//! minimization over a discrete grid of classes.
//!
//! Entry points:
//! - [`model`]: domains, DAGs, conditional tables, joint evaluation, JSON.
//! - [`data`]: datasets, CSV ingestion, counting, forward sampling.
//! - [`optimizer`]: floored maximum-likelihood estimation of a table row.
//! - [`bounds`]: risk functionals, VC bounds, confidence terms.
//! - [`search`]: order-based and exhaustive structure search, SRM selection.

pub mod bounds;
pub mod data;
pub mod error;
pub mod model;
pub mod optimizer;
pub mod search;

pub use bounds::{
    closed_form_bounds, confidence_term, confidence_term_general, empirical_risk, entropy,
    kl_divergence, srm_confidence, true_risk, vc_bound_graph, vc_bound_ordered,
    vc_bound_ordered_literal, vc_bound_unordered, RiskBound, VcBoundKind, VcBoundReport,
};
pub use data::{
    empirical_counts, forward_sample, load_csv, load_csv_str, load_schema, node_counts,
    to_csv_string, write_csv, CountTable, Dataset, Schema,
};
pub use error::{Error, Result};
pub use model::{BayesNet, CategoricalDomain, ConfigIndex, Cpt, Dag, NetDoc, Violation};
pub use optimizer::{
    brute_force_context, fit_cpt, fit_graph, solve_context, CutoffPolicy,
};
pub use search::{
    best_parents_per_node, enumerate_dags, fit_class, srm_select, validate_bound_experiment,
    BoundKind, ExperimentReport, GridCell, SearchResult, SrmConfig,
};
