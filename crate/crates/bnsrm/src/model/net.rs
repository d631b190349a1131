use crate::error::{Error, Result};
use crate::model::{CategoricalDomain, ConfigIndex, Cpt, Dag, NORMALIZATION_TOL};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A defect found by [`BayesNet::validate`]. Violations are reported, not
/// thrown, so a partially broken network can be inspected.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// A context row whose probabilities do not sum to 1.
    Normalization {
        node: usize,
        context: usize,
        sum: f64,
    },
    /// A table whose length does not match the domain and parent sets.
    Dimension {
        node: usize,
        expected: usize,
        actual: usize,
    },
    /// A cpt whose recorded node index disagrees with its position.
    NodeIndex { position: usize, node: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Normalization { node, context, sum } => write!(
                f,
                "node {node}, context {context}: probabilities sum to {sum}"
            ),
            Violation::Dimension {
                node,
                expected,
                actual,
            } => write!(
                f,
                "node {node}: table length {actual}, expected {expected}"
            ),
            Violation::NodeIndex { position, node } => {
                write!(f, "cpt at position {position} claims node {node}")
            }
        }
    }
}

/// A Bayesian network: domain, DAG, and one CPT per node.
#[derive(Debug, Clone, PartialEq)]
pub struct BayesNet {
    domain: CategoricalDomain,
    dag: Dag,
    cpts: Vec<Cpt>,
}

impl BayesNet {
    pub fn new(domain: CategoricalDomain, dag: Dag, cpts: Vec<Cpt>) -> Result<Self> {
        if dag.n() != domain.n() || cpts.len() != domain.n() {
            return Err(Error::DimensionMismatch(format!(
                "domain has {} variables, dag {}, cpts {}",
                domain.n(),
                dag.n(),
                cpts.len()
            )));
        }
        let net = Self { domain, dag, cpts };
        let violations = net.validate();
        if violations.is_empty() {
            Ok(net)
        } else {
            Err(Error::InvalidNetwork(
                violations.iter().map(|v| v.to_string()).collect(),
            ))
        }
    }

    /// Assemble without validity checks, for building deliberately broken
    /// networks in diagnostics and tests.
    pub fn new_unchecked(domain: CategoricalDomain, dag: Dag, cpts: Vec<Cpt>) -> Self {
        Self { domain, dag, cpts }
    }

    pub fn domain(&self) -> &CategoricalDomain {
        &self.domain
    }

    pub fn dag(&self) -> &Dag {
        &self.dag
    }

    pub fn cpt(&self, j: usize) -> &Cpt {
        &self.cpts[j]
    }

    pub fn cpts(&self) -> &[Cpt] {
        &self.cpts
    }

    /// Check every structural and normalization invariant, returning all
    /// violations found.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (j, cpt) in self.cpts.iter().enumerate() {
            if cpt.node() != j {
                out.push(Violation::NodeIndex {
                    position: j,
                    node: cpt.node(),
                });
                continue;
            }
            let expected_parents: Vec<usize> = self
                .dag
                .parents(j)
                .iter()
                .map(|&p| self.domain.size(p))
                .collect();
            let expected_len =
                expected_parents.iter().product::<usize>() * self.domain.size(j);
            if cpt.parent_sizes() != expected_parents.as_slice()
                || cpt.child_size() != self.domain.size(j)
                || cpt.table_len() != expected_len
            {
                out.push(Violation::Dimension {
                    node: j,
                    expected: expected_len,
                    actual: cpt.table_len(),
                });
                continue;
            }
            for omega in 0..cpt.parent_config_count() {
                let sum: f64 = cpt.log_row(omega).iter().map(|lp| lp.exp()).sum();
                if (sum - 1.0).abs() > NORMALIZATION_TOL {
                    out.push(Violation::Normalization {
                        node: j,
                        context: omega,
                        sum,
                    });
                }
            }
        }
        out
    }

    /// Parent configuration index of node `j` under the full assignment `x`.
    fn parent_config(&self, j: usize, x: &[usize]) -> usize {
        let mut idx = 0;
        for &p in self.dag.parents(j) {
            idx = idx * self.domain.size(p) + x[p];
        }
        idx
    }

    /// Joint log-probability `sum_j f_j(x_j, x|parents)` in nats.
    ///
    /// Returns negative infinity when the assignment hits a zero-probability
    /// table entry (possible for cutoff-free fits).
    pub fn log_joint(&self, x: &[usize]) -> Result<f64> {
        if x.len() != self.domain.n() {
            return Err(Error::DimensionMismatch(format!(
                "assignment length {} for {} variables",
                x.len(),
                self.domain.n()
            )));
        }
        for (j, &v) in x.iter().enumerate() {
            if v >= self.domain.size(j) {
                return Err(Error::InvalidAssignment {
                    node: j,
                    value: v,
                    size: self.domain.size(j),
                });
            }
        }
        let mut total = 0.0;
        for j in 0..self.domain.n() {
            let omega = self.parent_config(j, x);
            total += self.cpts[j].log_prob(x[j], omega);
        }
        Ok(total)
    }

    /// Iterate all joint assignments (small domains only).
    pub fn assignments(&self) -> Result<Vec<Vec<usize>>> {
        let states = self.domain.joint_states()?;
        let ix = ConfigIndex::new(self.domain.sizes().to_vec())?;
        Ok((0..states as usize).map(|i| ix.decode(i)).collect())
    }

    pub fn to_json(&self) -> Result<String> {
        let doc = NetDoc::from(self);
        Ok(serde_json::to_string_pretty(&doc)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: NetDoc = serde_json::from_str(text)?;
        doc.into_net()
    }

    pub fn write_json(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn read_json(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }
}

/// Serialized network document. Probability rows are in probability space,
/// ordered by ascending mixed-radix parent configuration index.
#[derive(Debug, Serialize, Deserialize)]
pub struct NetDoc {
    pub domain: DomainDoc,
    pub dag: DagDoc,
    pub cpts: Vec<CptDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct DomainDoc {
    pub names: Vec<String>,
    pub alphabets: Vec<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct DagDoc {
    pub parents: Vec<Vec<usize>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CptDoc {
    pub node: usize,
    pub rows: Vec<Vec<f64>>,
}

impl From<&BayesNet> for NetDoc {
    fn from(net: &BayesNet) -> Self {
        NetDoc {
            domain: DomainDoc {
                names: net.domain.names().to_vec(),
                alphabets: (0..net.domain.n())
                    .map(|j| net.domain.alphabet(j).to_vec())
                    .collect(),
            },
            dag: DagDoc {
                parents: net.dag.parent_lists().to_vec(),
            },
            cpts: net
                .cpts
                .iter()
                .map(|c| CptDoc {
                    node: c.node(),
                    rows: c.prob_rows(),
                })
                .collect(),
        }
    }
}

impl NetDoc {
    pub fn domain_and_dag(&self) -> Result<(CategoricalDomain, Dag)> {
        let domain =
            CategoricalDomain::new(self.domain.names.clone(), self.domain.alphabets.clone())?;
        let dag = Dag::new(domain.n(), self.dag.parents.clone())?;
        Ok((domain, dag))
    }

    pub fn into_net(self) -> Result<BayesNet> {
        let (domain, dag) = self.domain_and_dag()?;
        let mut cpts = Vec::with_capacity(domain.n());
        for doc in &self.cpts {
            let j = doc.node;
            if j >= domain.n() {
                return Err(Error::DimensionMismatch(format!(
                    "cpt for unknown node {j}"
                )));
            }
            let parent_sizes: Vec<usize> =
                dag.parents(j).iter().map(|&p| domain.size(p)).collect();
            cpts.push(Cpt::from_prob_rows(j, parent_sizes, &doc.rows)?);
        }
        cpts.sort_by_key(Cpt::node);
        BayesNet::new(domain, dag, cpts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_fair_coins() -> BayesNet {
        let domain = CategoricalDomain::binary(2);
        let dag = Dag::empty(2);
        let cpts = vec![
            Cpt::from_prob_rows(0, vec![], &[vec![0.5, 0.5]]).unwrap(),
            Cpt::from_prob_rows(1, vec![], &[vec![0.5, 0.5]]).unwrap(),
        ];
        BayesNet::new(domain, dag, cpts).unwrap()
    }

    /// Copy network: X2 repeats X1, copy probability clamped at 0.9.
    pub(crate) fn copy_net(copy_prob: f64) -> BayesNet {
        let domain = CategoricalDomain::binary(2);
        let dag = Dag::from_edges(2, &[(0, 1)]).unwrap();
        let q = 1.0 - copy_prob;
        let cpts = vec![
            Cpt::from_prob_rows(0, vec![], &[vec![0.5, 0.5]]).unwrap(),
            Cpt::from_prob_rows(1, vec![2], &[vec![copy_prob, q], vec![q, copy_prob]]).unwrap(),
        ];
        BayesNet::new(domain, dag, cpts).unwrap()
    }

    #[test]
    fn log_joint_uniform_product() {
        let net = two_fair_coins();
        let lp = net.log_joint(&[0, 1]).unwrap();
        assert!((lp - (-2.0 * std::f64::consts::LN_2)).abs() < 1e-12);
    }

    #[test]
    fn log_joint_clamped_copy() {
        let net = copy_net(0.9);
        let lp = net.log_joint(&[0, 0]).unwrap();
        assert!((lp - (0.5f64.ln() + 0.9f64.ln())).abs() < 1e-12);
        assert!((lp - (-0.7985)).abs() < 1e-4);
    }

    #[test]
    fn joint_normalizes_over_all_assignments() {
        let domain = CategoricalDomain::binary(3);
        let dag = Dag::empty(3);
        let cpts = (0..3)
            .map(|j| Cpt::from_prob_rows(j, vec![], &[vec![0.5, 0.5]]).unwrap())
            .collect();
        let net = BayesNet::new(domain, dag, cpts).unwrap();
        let total: f64 = net
            .assignments()
            .unwrap()
            .iter()
            .map(|x| net.log_joint(x).unwrap().exp())
            .sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn log_joint_rejects_out_of_range() {
        let net = two_fair_coins();
        assert!(net.log_joint(&[0, 2]).is_err());
        assert!(net.log_joint(&[0]).is_err());
    }

    #[test]
    fn validate_reports_normalization_defect() {
        let domain = CategoricalDomain::binary(2);
        let dag = Dag::empty(2);
        let good = Cpt::from_prob_rows(0, vec![], &[vec![0.5, 0.5]]).unwrap();
        let bad = Cpt::from_log_rows(1, vec![], vec![vec![0.49f64.ln(), 0.49f64.ln()]]);
        let net = BayesNet::new_unchecked(domain, dag, vec![good, bad]);
        let violations = net.validate();
        assert_eq!(violations.len(), 1);
        match &violations[0] {
            Violation::Normalization { node, context, sum } => {
                assert_eq!((*node, *context), (1, 0));
                assert!((sum - 0.98).abs() < 1e-12);
            }
            other => panic!("unexpected violation {other:?}"),
        }
    }

    #[test]
    fn validate_reports_dimension_defect() {
        let domain = CategoricalDomain::binary(2);
        let dag = Dag::from_edges(2, &[(0, 1)]).unwrap();
        let cpts = vec![
            Cpt::from_prob_rows(0, vec![], &[vec![0.5, 0.5]]).unwrap(),
            // claims no parents although the dag gives node 1 a parent
            Cpt::from_prob_rows(1, vec![], &[vec![0.5, 0.5]]).unwrap(),
        ];
        let net = BayesNet::new_unchecked(domain, dag, cpts);
        let violations = net.validate();
        assert_eq!(violations.len(), 1);
        assert!(matches!(violations[0], Violation::Dimension { node: 1, .. }));
    }

    #[test]
    fn well_formed_net_has_no_violations() {
        assert!(two_fair_coins().validate().is_empty());
    }

    #[test]
    fn json_roundtrip_preserves_log_joint() {
        let net = copy_net(0.9);
        let text = net.to_json().unwrap();
        let back = BayesNet::from_json(&text).unwrap();
        for x in net.assignments().unwrap() {
            let a = net.log_joint(&x).unwrap();
            let b = back.log_joint(&x).unwrap();
            assert!((a - b).abs() < 1e-14);
        }
    }
}
