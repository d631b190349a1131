//! Structure search over bounded-in-degree graphs and the structural risk
//! minimization loop selecting (in-degree class, cutoff index, graph, CPTs).

use crate::bounds::{
    closed_form_bounds, confidence_term, ordered_family_h, true_risk, vc_bound_unordered,
    RiskBound,
};
use crate::data::{forward_sample, node_counts, Dataset};
use crate::error::{Error, Result};
use crate::model::{BayesNet, Dag};
use crate::optimizer::{fit_graph, solve_context, CutoffPolicy};
use serde::{Deserialize, Serialize};

/// Which VC bound family supplies `h_k` for class `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    /// Ordered-family bound over the search order (widened form).
    #[default]
    Ordered,
    /// Unordered-family bound over all graphs of in-degree `k`.
    Unordered,
    /// Closed form `n * l_max^(k+1)`.
    ClosedForm,
}

/// Configuration of the SRM grid. The prior defaults to `2^-(k+m)`
/// renormalized over the finite grid; the cutoff ladder is `lambda_m = 2^-m`.
#[derive(Debug, Clone, PartialEq)]
pub struct SrmConfig {
    /// Largest in-degree class to consider.
    pub delta_max: usize,
    /// Largest cutoff index.
    pub m_max: usize,
    /// Overall confidence parameter.
    pub eta: f64,
    /// Search order; `None` means natural index order.
    pub order: Option<Vec<usize>>,
    pub bound_kind: BoundKind,
    /// Exhaustive DAG enumeration instead of order-based search (guarded).
    pub exhaustive: bool,
    /// Custom prior weights indexed `[k][m-1]`; renormalized over the grid.
    pub prior: Option<Vec<Vec<f64>>>,
}

impl SrmConfig {
    pub fn new(delta_max: usize, m_max: usize, eta: f64) -> Self {
        Self {
            delta_max,
            m_max,
            eta,
            order: None,
            bound_kind: BoundKind::default(),
            exhaustive: false,
            prior: None,
        }
    }
}

/// One evaluated cell of the SRM grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridCell {
    pub k: usize,
    pub m: usize,
    pub lambda: f64,
    pub q: f64,
    pub h: u128,
    /// False when `lambda_m^(1/n)` is an infeasible floor; such cells are
    /// skipped, not fatal.
    pub feasible: bool,
    pub r_emp: Option<f64>,
    pub phi: Option<f64>,
    pub bound: Option<f64>,
}

/// Chosen parent set and conditional log-loss of one node.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeChoice {
    pub node: usize,
    pub parents: Vec<usize>,
    /// The node's contribution to the empirical risk, nats.
    pub score: f64,
}

/// Outcome of a structure search.
#[derive(Debug, Clone)]
pub struct SearchResult {
    pub net: BayesNet,
    pub r_emp: f64,
    pub per_node_scores: Vec<NodeChoice>,
    /// Certified statement, filled by [`srm_select`].
    pub risk_bound: Option<RiskBound>,
    /// Full grid record, filled by [`srm_select`].
    pub grid: Vec<GridCell>,
}

impl SearchResult {
    pub fn dag(&self) -> &Dag {
        self.net.dag()
    }
}

/// All subsets of `candidates` up to `max_size`, smaller first, then
/// lexicographic. `candidates` must be sorted ascending.
fn subsets_up_to(candidates: &[usize], max_size: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for size in 1..=max_size.min(candidates.len()) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            out.push(idx.iter().map(|&i| candidates[i]).collect());
            // next combination in lexicographic order
            let mut pos = size;
            while pos > 0 {
                pos -= 1;
                if idx[pos] + 1 <= candidates.len() - (size - pos) {
                    idx[pos] += 1;
                    for p in pos + 1..size {
                        idx[p] = idx[p - 1] + 1;
                    }
                    break;
                }
                if pos == 0 {
                    pos = usize::MAX;
                    break;
                }
            }
            if pos == usize::MAX {
                break;
            }
        }
    }
    out
}

/// Conditional negative log-likelihood of one node under its floored MLE.
fn node_score(data: &Dataset, node: usize, parents: &[usize], epsilon: f64) -> Result<f64> {
    let counts = node_counts(data, node, parents)?;
    let mut total = 0.0;
    for omega in 0..counts.parent_config_count() {
        let row = counts.row(omega);
        if row.iter().all(|&c| c == 0) {
            continue;
        }
        let p = solve_context(row, epsilon)?;
        for (&c, &x) in row.iter().zip(&p) {
            if c > 0 {
                total -= c as f64 * x.ln();
            }
        }
    }
    Ok(total / data.len() as f64)
}

/// For each node, pick the empirical-risk-minimizing parent subset of its
/// order-predecessors with at most `delta` elements. Because the risk
/// separates over nodes, the per-node choices assemble into the optimal
/// order-consistent DAG of in-degree `delta`.
///
/// Ties prefer the smaller subset, then the lexicographically smallest.
pub fn best_parents_per_node(
    data: &Dataset,
    order: &[usize],
    delta: usize,
    policy: &CutoffPolicy,
) -> Result<SearchResult> {
    let n = data.domain().n();
    check_order(order, n)?;
    policy.check_feasible(data.domain())?;
    if data.is_empty() {
        return Err(Error::EmptyDataset("search needs rows".into()));
    }

    let mut parent_lists = vec![Vec::new(); n];
    let mut choices = Vec::with_capacity(n);
    let mut predecessors: Vec<usize> = Vec::new();
    for &node in order {
        let mut sorted_preds = predecessors.clone();
        sorted_preds.sort_unstable();
        let mut best: Option<(f64, Vec<usize>)> = None;
        for subset in subsets_up_to(&sorted_preds, delta) {
            let score = node_score(data, node, &subset, policy.epsilon())?;
            if best.as_ref().map_or(true, |(b, _)| score < *b) {
                best = Some((score, subset));
            }
        }
        let (score, parents) = best.expect("empty subset always evaluated");
        parent_lists[node] = parents.clone();
        choices.push(NodeChoice {
            node,
            parents,
            score,
        });
        predecessors.push(node);
    }
    choices.sort_by_key(|c| c.node);

    let dag = Dag::new(n, parent_lists)?;
    let (net, r_emp) = fit_graph(data, &dag, policy)?;
    Ok(SearchResult {
        net,
        r_emp,
        per_node_scores: choices,
        risk_bound: None,
        grid: Vec::new(),
    })
}

fn check_order(order: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if order.len() != n {
        return Err(Error::InvalidParameter(format!(
            "order has {} entries for {n} variables",
            order.len()
        )));
    }
    for &j in order {
        if j >= n || seen[j] {
            return Err(Error::InvalidParameter(
                "order is not a permutation of the variables".into(),
            ));
        }
        seen[j] = true;
    }
    Ok(())
}

/// Streaming enumeration of every DAG with max in-degree `delta`, in a
/// deterministic order: odometer over per-node parent subsets, cyclic
/// assignments filtered out.
pub fn enumerate_dags(n: usize, delta: usize) -> Result<DagEnumerator> {
    if n > 6 || delta > 2 {
        // per-node menu size is sum_{d <= delta} C(n-1, d)
        let d_eff = delta.min(n.saturating_sub(1));
        let mut menu: u128 = 0;
        for d in 0..=d_eff {
            let mut c: u128 = 1;
            for i in 0..d {
                c = c.saturating_mul((n - 1 - i) as u128) / (i + 1) as u128;
            }
            menu = menu.saturating_add(c);
        }
        let estimate = (0..n).fold(1u128, |acc, _| acc.saturating_mul(menu));
        return Err(Error::EnumerationGuard { n, delta, estimate });
    }
    let per_node = subsets_up_to(
        &(0..n).collect::<Vec<_>>(),
        delta.min(n.saturating_sub(1)),
    );
    // subsets above exclude nothing yet; per node j we drop those containing j
    let menus: Vec<Vec<Vec<usize>>> = (0..n)
        .map(|j| {
            per_node
                .iter()
                .filter(|s| !s.contains(&j))
                .cloned()
                .collect()
        })
        .collect();
    Ok(DagEnumerator {
        n,
        menus,
        state: vec![0; n],
        done: n == 0,
    })
}

pub struct DagEnumerator {
    n: usize,
    menus: Vec<Vec<Vec<usize>>>,
    state: Vec<usize>,
    done: bool,
}

impl Iterator for DagEnumerator {
    type Item = Dag;

    fn next(&mut self) -> Option<Dag> {
        while !self.done {
            let parents: Vec<Vec<usize>> = self
                .state
                .iter()
                .enumerate()
                .map(|(j, &i)| self.menus[j][i].clone())
                .collect();
            // advance odometer
            let mut pos = self.n;
            loop {
                if pos == 0 {
                    self.done = true;
                    break;
                }
                pos -= 1;
                self.state[pos] += 1;
                if self.state[pos] < self.menus[pos].len() {
                    break;
                }
                self.state[pos] = 0;
            }
            if let Ok(dag) = Dag::new(self.n, parents) {
                return Some(dag);
            }
        }
        None
    }
}

fn class_bound(
    data: &Dataset,
    order: &[usize],
    k: usize,
    kind: BoundKind,
) -> Result<u128> {
    let domain = data.domain();
    match kind {
        BoundKind::Ordered => {
            let sizes: Vec<usize> = order.iter().map(|&j| domain.size(j)).collect();
            ordered_family_h(&sizes, k, true)
        }
        BoundKind::Unordered => Ok(vc_bound_unordered(domain, k)?.h),
        BoundKind::ClosedForm => {
            let l_max = *domain.sizes().iter().max().expect("nonempty domain");
            Ok(closed_form_bounds(domain.n(), l_max, k)?.0)
        }
    }
}

/// Fit the best network of in-degree class `k` under `policy`, either by
/// order decomposition or by exhaustive enumeration.
pub fn fit_class(
    data: &Dataset,
    order: &[usize],
    k: usize,
    policy: &CutoffPolicy,
    exhaustive: bool,
) -> Result<SearchResult> {
    if !exhaustive {
        return best_parents_per_node(data, order, k, policy);
    }
    let n = data.domain().n();
    let mut best: Option<(f64, BayesNet)> = None;
    for dag in enumerate_dags(n, k)? {
        let (net, r_emp) = fit_graph(data, &dag, policy)?;
        if best.as_ref().map_or(true, |(b, _)| r_emp < *b) {
            best = Some((r_emp, net));
        }
    }
    let (r_emp, net) = best.expect("at least the empty graph is enumerated");
    let per_node_scores = (0..n)
        .map(|j| {
            node_score(data, j, net.dag().parents(j), policy.epsilon()).map(|score| NodeChoice {
                node: j,
                parents: net.dag().parents(j).to_vec(),
                score,
            })
        })
        .collect::<Result<_>>()?;
    Ok(SearchResult {
        net,
        r_emp,
        per_node_scores,
        risk_bound: None,
        grid: Vec::new(),
    })
}

/// Structural risk minimization over the `(k, m)` grid.
///
/// Every feasible cell fits its class optimum at floor `(2^-m)^(1/n)` and
/// records `R_emp + phi`; the returned cell minimizes that sum (ties:
/// smaller `k`, then smaller `m`). Infeasible cells are recorded and
/// skipped.
pub fn srm_select(data: &Dataset, config: &SrmConfig) -> Result<SearchResult> {
    let domain = data.domain();
    let n = domain.n();
    if data.is_empty() {
        return Err(Error::EmptyDataset("srm needs rows".into()));
    }
    if !(config.eta > 0.0 && config.eta < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "eta must be in (0, 1), got {}",
            config.eta
        )));
    }
    if config.m_max == 0 {
        return Err(Error::InvalidParameter("m_max must be >= 1".into()));
    }
    let delta_max = config.delta_max.min(n.saturating_sub(1));
    let identity: Vec<usize> = (0..n).collect();
    let order = config.order.as_deref().unwrap_or(&identity);
    check_order(order, n)?;

    // prior weights over the finite grid, renormalized to sum to 1
    let mut weights = vec![vec![0.0; config.m_max]; delta_max + 1];
    let mut z = 0.0;
    for (k, row) in weights.iter_mut().enumerate() {
        for m in 1..=config.m_max {
            let w = match &config.prior {
                Some(p) => *p
                    .get(k)
                    .and_then(|r| r.get(m - 1))
                    .ok_or_else(|| Error::InvalidParameter("prior grid too small".into()))?,
                None => 0.5f64.powi((k + m) as i32),
            };
            if w <= 0.0 {
                return Err(Error::InvalidParameter(
                    "prior weights must be positive".into(),
                ));
            }
            row[m - 1] = w;
            z += w;
        }
    }

    let mut grid = Vec::new();
    let mut best: Option<(f64, usize, usize, SearchResult, RiskBound)> = None;
    for k in 0..=delta_max {
        let h = class_bound(data, order, k, config.bound_kind)?;
        for m in 1..=config.m_max {
            let lambda = 0.5f64.powi(m as i32);
            let q = weights[k][m - 1] / z;
            let policy = CutoffPolicy::new(lambda, n)?;
            if policy.check_feasible(domain).is_err() {
                grid.push(GridCell {
                    k,
                    m,
                    lambda,
                    q,
                    h,
                    feasible: false,
                    r_emp: None,
                    phi: None,
                    bound: None,
                });
                continue;
            }
            let fit = fit_class(data, order, k, &policy, config.exhaustive)?;
            let phi = confidence_term(lambda, data.len(), h, q * config.eta)?;
            let bound = fit.r_emp + phi;
            grid.push(GridCell {
                k,
                m,
                lambda,
                q,
                h,
                feasible: true,
                r_emp: Some(fit.r_emp),
                phi: Some(phi),
                bound: Some(bound),
            });
            if best.as_ref().map_or(true, |(b, ..)| bound < *b) {
                let rb = RiskBound {
                    r_emp: fit.r_emp,
                    phi,
                    bound,
                    eta: config.eta,
                    lambda,
                    h,
                    k: Some(k),
                    m: Some(m),
                    q: Some(q),
                };
                best = Some((bound, k, m, fit, rb));
            }
        }
    }

    match best {
        Some((_, _, _, mut result, rb)) => {
            result.risk_bound = Some(rb);
            result.grid = grid;
            Ok(result)
        }
        None => {
            let max_m = *domain.sizes().iter().max().expect("nonempty");
            Err(Error::InfeasibleFloor {
                epsilon: 0.5f64.powi(config.m_max as i32).powf(1.0 / n as f64),
                m: max_m,
            })
        }
    }
}

/// Outcome of repeated bound-soundness trials against a known ground truth.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub trials: usize,
    pub violations: usize,
    pub violation_rate: f64,
    /// Mean of `bound - true_risk` over the trials.
    pub mean_slack: f64,
    pub eta: f64,
}

/// Repeatedly sample `l` rows from `truth`, run [`srm_select`], and compare
/// the certified bound against the exact true risk of the selected network.
pub fn validate_bound_experiment(
    truth: &BayesNet,
    config: &SrmConfig,
    l: usize,
    trials: usize,
    seed: u64,
) -> Result<ExperimentReport> {
    if trials == 0 {
        return Err(Error::InvalidParameter("need at least one trial".into()));
    }
    let mut violations = 0;
    let mut slack_sum = 0.0;
    for t in 0..trials {
        let trial_seed = seed.wrapping_add((t as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let data = forward_sample(truth, l, trial_seed)?;
        let result = srm_select(&data, config)?;
        let bound = result
            .risk_bound
            .as_ref()
            .expect("srm_select fills the bound")
            .bound;
        let risk = true_risk(&result.net, truth)?;
        if risk > bound {
            violations += 1;
        }
        slack_sum += bound - risk;
    }
    Ok(ExperimentReport {
        trials,
        violations,
        violation_rate: violations as f64 / trials as f64,
        mean_slack: slack_sum / trials as f64,
        eta: config.eta,
    })
}
