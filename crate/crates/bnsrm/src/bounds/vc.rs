//! VC-dimension upper bounds for graph-structured families.
//!
//! All arithmetic is checked `u128`; overflow is an error, never a wrap.

use crate::error::{Error, Result};
use crate::model::{CategoricalDomain, Dag};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VcBoundKind {
    /// Per-graph bound `N_G`.
    GivenGraph,
    /// All graphs of bounded in-degree consistent with the index order.
    OrderedFamily,
    /// All graphs of bounded in-degree, no order given.
    UnorderedFamily,
    /// Closed-form simplification using the largest alphabet size.
    ClosedForm,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VcBoundReport {
    pub h: u128,
    pub kind: VcBoundKind,
    pub n: usize,
    pub delta: Option<usize>,
    pub sizes: Vec<usize>,
}

fn cmul(a: u128, b: u128) -> Result<u128> {
    a.checked_mul(b).ok_or(Error::BoundOverflow)
}

fn cadd(a: u128, b: u128) -> Result<u128> {
    a.checked_add(b).ok_or(Error::BoundOverflow)
}

/// Elementary symmetric polynomial `e_s(values)`: the sum over all size-`s`
/// subsets of the product of their elements.
fn elementary_symmetric(values: &[u128], s: usize) -> Result<u128> {
    if s > values.len() {
        return Ok(0);
    }
    let mut e = vec![0u128; s + 1];
    e[0] = 1;
    for &v in values {
        for k in (1..=s).rev() {
            e[k] = cadd(e[k], cmul(e[k - 1], v)?)?;
        }
    }
    Ok(e[s])
}

fn binomial(n: usize, k: usize) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = cmul(acc, (n - i) as u128)?;
        acc /= (i + 1) as u128;
    }
    Ok(acc)
}

/// Per-graph bound: `N_G = sum_j prod_{i in r_j + {j}} m_i`.
pub fn vc_bound_graph(domain: &CategoricalDomain, dag: &Dag) -> Result<VcBoundReport> {
    if dag.n() != domain.n() {
        return Err(Error::DimensionMismatch(format!(
            "dag has {} nodes, domain {} variables",
            dag.n(),
            domain.n()
        )));
    }
    let mut h: u128 = 0;
    for j in 0..domain.n() {
        let mut term = domain.size(j) as u128;
        for &p in dag.parents(j) {
            term = cmul(term, domain.size(p) as u128)?;
        }
        h = cadd(h, term)?;
    }
    Ok(VcBoundReport {
        h,
        kind: VcBoundKind::GivenGraph,
        n: domain.n(),
        delta: Some(dag.max_in_degree()),
        sizes: domain.sizes().to_vec(),
    })
}

/// Ordered-family sum for an explicit size sequence (position = rank in the
/// variable order). Exposed so search code can evaluate it under a custom
/// ordering.
pub fn ordered_family_h(sizes: &[usize], delta: usize, widened: bool) -> Result<u128> {
    let mut h: u128 = 0;
    for j in 0..sizes.len() {
        let preds: Vec<u128> = sizes[..j].iter().map(|&m| m as u128).collect();
        // the literal formula keeps subset size delta even when the node has
        // fewer predecessors, which contributes nothing for early nodes
        let s = if widened { delta.min(j) } else { delta };
        let subsets = elementary_symmetric(&preds, s)?;
        h = cadd(h, cmul(sizes[j] as u128, subsets)?)?;
    }
    Ok(h)
}

fn ordered_sum(domain: &CategoricalDomain, delta: usize, widened: bool) -> Result<u128> {
    ordered_family_h(domain.sizes(), delta, widened)
}

/// Ordered-family bound, variable order = index order.
///
/// The subset size is widened to `min(delta, j-1)` per node so that every
/// node's parameter space is housed; `vc_bound_ordered_literal` evaluates
/// the unwidened double sum for comparison.
pub fn vc_bound_ordered(domain: &CategoricalDomain, delta: usize) -> Result<VcBoundReport> {
    check_delta(domain, delta)?;
    Ok(VcBoundReport {
        h: ordered_sum(domain, delta, true)?,
        kind: VcBoundKind::OrderedFamily,
        n: domain.n(),
        delta: Some(delta),
        sizes: domain.sizes().to_vec(),
    })
}

/// Ordered-family bound with the subset size held at exactly `delta`.
pub fn vc_bound_ordered_literal(
    domain: &CategoricalDomain,
    delta: usize,
) -> Result<VcBoundReport> {
    check_delta(domain, delta)?;
    Ok(VcBoundReport {
        h: ordered_sum(domain, delta, false)?,
        kind: VcBoundKind::OrderedFamily,
        n: domain.n(),
        delta: Some(delta),
        sizes: domain.sizes().to_vec(),
    })
}

/// Unordered-family bound: sum over all `(delta+1)`-subsets of the product
/// of their alphabet sizes.
pub fn vc_bound_unordered(domain: &CategoricalDomain, delta: usize) -> Result<VcBoundReport> {
    check_delta(domain, delta)?;
    let values: Vec<u128> = domain.sizes().iter().map(|&m| m as u128).collect();
    Ok(VcBoundReport {
        h: elementary_symmetric(&values, delta + 1)?,
        kind: VcBoundKind::UnorderedFamily,
        n: domain.n(),
        delta: Some(delta),
        sizes: domain.sizes().to_vec(),
    })
}

fn check_delta(domain: &CategoricalDomain, delta: usize) -> Result<()> {
    if delta >= domain.n() {
        return Err(Error::InvalidParameter(format!(
            "delta {delta} must be below n = {}",
            domain.n()
        )));
    }
    Ok(())
}

/// The three closed-form simplifications with `l_max = max_j m_j`:
/// given graph, ordered family, unordered family.
pub fn closed_form_bounds(n: usize, l_max: usize, delta: usize) -> Result<(u128, u128, u128)> {
    if n == 0 || l_max < 2 || delta >= n {
        return Err(Error::InvalidParameter(format!(
            "bad closed-form parameters n={n}, l_max={l_max}, delta={delta}"
        )));
    }
    let mut pow: u128 = 1;
    for _ in 0..=delta {
        pow = cmul(pow, l_max as u128)?;
    }
    let given = cmul(n as u128, pow)?;
    let mut choose_sum: u128 = 0;
    for j in 1..=n {
        choose_sum = cadd(choose_sum, binomial(j - 1, delta)?)?;
    }
    let ordered = cmul(pow, choose_sum)?;
    let unordered = cmul(binomial(n, delta + 1)?, pow)?;
    Ok((given, ordered, unordered))
}
