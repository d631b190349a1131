use crate::error::{Error, Result};
use crate::model::ConfigIndex;

/// Tolerance for per-context probability normalization.
pub const NORMALIZATION_TOL: f64 = 1e-9;

/// Conditional probability table of one node, stored as natural-log
/// probabilities `f_j(x_j, omega)`.
///
/// Layout: flat row-major over parent configurations, child value fastest
/// varying: `index = omega_index * m_j + x_j`, with the parent configuration
/// index mixed-radix over parents in ascending node order.
#[derive(Debug, Clone, PartialEq)]
pub struct Cpt {
    node: usize,
    child_size: usize,
    parent_sizes: Vec<usize>,
    log_table: Vec<f64>,
}

impl Cpt {
    /// Build from per-context probability rows, `rows[omega][x_j]`.
    /// Each row must sum to 1 within [`NORMALIZATION_TOL`].
    pub fn from_prob_rows(
        node: usize,
        parent_sizes: Vec<usize>,
        rows: &[Vec<f64>],
    ) -> Result<Self> {
        let child_size = rows
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::DimensionMismatch("cpt needs at least one row".into()))?;
        let configs: usize = parent_sizes.iter().product();
        if rows.len() != configs {
            return Err(Error::DimensionMismatch(format!(
                "node {node}: expected {configs} rows, got {}",
                rows.len()
            )));
        }
        let mut log_table = Vec::with_capacity(configs * child_size);
        for (omega, row) in rows.iter().enumerate() {
            if row.len() != child_size {
                return Err(Error::DimensionMismatch(format!(
                    "node {node}: ragged row at context {omega}"
                )));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > NORMALIZATION_TOL {
                return Err(Error::DimensionMismatch(format!(
                    "node {node}: row {omega} sums to {sum}"
                )));
            }
            for &p in row {
                if !(0.0..=1.0 + NORMALIZATION_TOL).contains(&p) {
                    return Err(Error::DimensionMismatch(format!(
                        "node {node}: probability {p} out of [0,1]"
                    )));
                }
                log_table.push(p.ln());
            }
        }
        Ok(Self {
            node,
            child_size,
            parent_sizes,
            log_table,
        })
    }

    /// Build from per-context log-probability rows without re-normalizing.
    /// The caller guarantees each row's exp sums to 1.
    pub(crate) fn from_log_rows(
        node: usize,
        parent_sizes: Vec<usize>,
        log_rows: Vec<Vec<f64>>,
    ) -> Self {
        let child_size = log_rows[0].len();
        let log_table = log_rows.into_iter().flatten().collect();
        Self {
            node,
            child_size,
            parent_sizes,
            log_table,
        }
    }

    pub fn node(&self) -> usize {
        self.node
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

    pub fn table_len(&self) -> usize {
        self.log_table.len()
    }

    /// Mixed-radix codec for the parent configuration part of the index.
    pub fn parent_index(&self) -> ConfigIndex {
        ConfigIndex::new(self.parent_sizes.clone()).expect("validated at construction")
    }

    /// Log probability `f_j(x_j, omega)`.
    pub fn log_prob(&self, child: usize, omega: usize) -> f64 {
        self.log_table[omega * self.child_size + child]
    }

    /// One context's log-probability row.
    pub fn log_row(&self, omega: usize) -> &[f64] {
        let start = omega * self.child_size;
        &self.log_table[start..start + self.child_size]
    }

    /// Probability-space rows in parent-configuration order.
    pub fn prob_rows(&self) -> Vec<Vec<f64>> {
        (0..self.parent_config_count())
            .map(|omega| self.log_row(omega).iter().map(|lp| lp.exp()).collect())
            .collect()
    }

    /// Smallest table entry, in log space.
    pub fn min_log_prob(&self) -> f64 {
        self.log_table.iter().cloned().fold(f64::INFINITY, f64::min)
    }
}
