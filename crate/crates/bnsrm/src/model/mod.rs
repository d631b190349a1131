//! Domain types: categorical variables, DAGs, CPTs, and joint evaluation.

mod cpt;
mod dag;
mod domain;
mod index;
mod net;

pub use cpt::{Cpt, NORMALIZATION_TOL};
pub use dag::Dag;
pub use domain::CategoricalDomain;
pub use index::ConfigIndex;
pub use net::{BayesNet, CptDoc, DagDoc, DomainDoc, NetDoc, Violation};
