use crate::error::{Error, Result};
use crate::model::{CategoricalDomain, Dag};

/// A table of observed samples, stored as integer value codes.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    domain: CategoricalDomain,
    rows: Vec<Vec<usize>>,
}

impl Dataset {
    pub fn new(domain: CategoricalDomain, rows: Vec<Vec<usize>>) -> Result<Self> {
        for (i, row) in rows.iter().enumerate() {
            if row.len() != domain.n() {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} values for {} variables",
                    row.len(),
                    domain.n()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= domain.size(j) {
                    return Err(Error::InvalidAssignment {
                        node: j,
                        value: v,
                        size: domain.size(j),
                    });
                }
            }
        }
        Ok(Self { domain, rows })
    }

    pub fn domain(&self) -> &CategoricalDomain {
        &self.domain
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// Sample count `l`.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// Sufficient statistics of one node for a given parent set: counts
/// `c(x_j, omega)` laid out exactly like the node's CPT table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    node: usize,
    parents: Vec<usize>,
    child_size: usize,
    parent_sizes: Vec<usize>,
    counts: Vec<u64>,
}

impl CountTable {
    pub fn node(&self) -> usize {
        self.node
    }

    pub fn parents(&self) -> &[usize] {
        &self.parents
    }

    pub fn child_size(&self) -> usize {
        self.child_size
    }

    pub fn parent_sizes(&self) -> &[usize] {
        &self.parent_sizes
    }

    pub fn parent_config_count(&self) -> usize {
        self.parent_sizes.iter().product()
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn count(&self, child: usize, omega: usize) -> u64 {
        self.counts[omega * self.child_size + child]
    }

    /// One context's count row.
    pub fn row(&self, omega: usize) -> &[u64] {
        let start = omega * self.child_size;
        &self.counts[start..start + self.child_size]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Empirical counts of the parent configurations (counts marginalized
    /// over the child value).
    pub fn parent_totals(&self) -> Vec<u64> {
        (0..self.parent_config_count())
            .map(|omega| self.row(omega).iter().sum())
            .collect()
    }
}

/// Tally `c(x_j, omega)` for every node of `dag` over `data`.
pub fn empirical_counts(data: &Dataset, dag: &Dag) -> Result<Vec<CountTable>> {
    let domain = data.domain();
    if dag.n() != domain.n() {
        return Err(Error::DimensionMismatch(format!(
            "dag has {} nodes, domain {} variables",
            dag.n(),
            domain.n()
        )));
    }
    (0..domain.n())
        .map(|j| node_counts(data, j, dag.parents(j)))
        .collect()
}

/// Tally one node's counts for an explicit parent set (ascending indices).
pub fn node_counts(data: &Dataset, node: usize, parents: &[usize]) -> Result<CountTable> {
    let domain = data.domain();
    let child_size = domain.size(node);
    let parent_sizes: Vec<usize> = parents.iter().map(|&p| domain.size(p)).collect();
    let len = parent_sizes.iter().product::<usize>() * child_size;
    let mut counts = vec![0u64; len];
    for row in data.rows() {
        let mut omega = 0;
        for (&p, &m) in parents.iter().zip(&parent_sizes) {
            omega = omega * m + row[p];
        }
        counts[omega * child_size + row[node]] += 1;
    }
    Ok(CountTable {
        node,
        parents: parents.to_vec(),
        child_size,
        parent_sizes,
        counts,
    })
}
