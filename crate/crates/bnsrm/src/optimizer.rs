//! Constrained per-node maximum likelihood.
//!
//! Per node and parent configuration the problem is: maximize
//! `sum_i counts[i] * ln p[i]` over the simplex with an elementwise floor
//! `p[i] >= epsilon`. The optimum has the water-filling form
//! `p[i] = max(epsilon, counts[i] / nu)` and is found exactly by scanning
//! breakpoints of the sorted counts.

use crate::bounds::empirical_risk;
use crate::data::{empirical_counts, CountTable, Dataset};
use crate::error::{Error, Result};
use crate::model::{BayesNet, CategoricalDomain, Cpt, Dag};

/// Probability floor derived from a joint cutoff: `epsilon = lambda^(1/n)`.
///
/// `lambda = 0` (from [`CutoffPolicy::unbounded`]) disables the floor and
/// permits zero-probability table entries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutoffPolicy {
    lambda: f64,
    epsilon: f64,
}

impl CutoffPolicy {
    pub fn new(lambda: f64, n: usize) -> Result<Self> {
        if !(lambda > 0.0 && lambda <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "lambda must be in (0, 1], got {lambda}"
            )));
        }
        if n == 0 {
            return Err(Error::InvalidParameter("n must be >= 1".into()));
        }
        Ok(Self {
            lambda,
            epsilon: lambda.powf(1.0 / n as f64),
        })
    }

    /// No floor at all; zero-count values get probability zero.
    pub fn unbounded() -> Self {
        Self {
            lambda: 0.0,
            epsilon: 0.0,
        }
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// The floor is feasible iff `epsilon * m_j <= 1` for every variable.
    pub fn check_feasible(&self, domain: &CategoricalDomain) -> Result<()> {
        for &m in domain.sizes() {
            if self.epsilon * m as f64 > 1.0 + 1e-12 {
                return Err(Error::InfeasibleFloor {
                    epsilon: self.epsilon,
                    m,
                });
            }
        }
        Ok(())
    }
}

/// Exact KKT solution of the floored categorical MLE for one context.
///
/// All-zero counts return the uniform vector. Clamped coordinates are set
/// to `epsilon` exactly.
pub fn solve_context(counts: &[u64], epsilon: f64) -> Result<Vec<f64>> {
    let m = counts.len();
    if m < 2 {
        return Err(Error::InvalidParameter(
            "context needs at least two values".into(),
        ));
    }
    if !(0.0..=1.0).contains(&epsilon) || epsilon * m as f64 > 1.0 + 1e-12 {
        return Err(Error::InfeasibleFloor { epsilon, m });
    }
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return Ok(vec![1.0 / m as f64; m]);
    }
    if epsilon == 0.0 {
        return Ok(counts
            .iter()
            .map(|&c| c as f64 / total as f64)
            .collect());
    }

    // Scan the number of clamped coordinates in ascending count order.
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&i| counts[i]);
    let mut clamped_sum = 0u64;
    for k in 0..m {
        let rest: u64 = total - clamped_sum;
        let mass = 1.0 - k as f64 * epsilon;
        let nu = rest as f64 / mass;
        let clamp_ok = k == 0 || counts[order[k - 1]] as f64 <= epsilon * nu + 1e-12;
        let free_ok = counts[order[k]] as f64 >= epsilon * nu - 1e-12;
        if clamp_ok && free_ok {
            let mut p = vec![0.0; m];
            for (rank, &i) in order.iter().enumerate() {
                p[i] = if rank < k {
                    epsilon
                } else {
                    counts[i] as f64 / nu
                };
            }
            return Ok(p);
        }
        clamped_sum += counts[order[k]];
    }
    unreachable!("breakpoint scan always finds a feasible clamp count");
}

/// Independent grid-search oracle for [`solve_context`], test use only.
///
/// Searches the lattice of the given resolution, coarse-to-fine: a full
/// coarse sweep followed by refinement boxes around the running optimum.
/// The objective is concave, so each refinement box is guaranteed to
/// contain the lattice optimum of the next level.
pub fn brute_force_context(counts: &[u64], epsilon: f64, resolution: f64) -> Result<Vec<f64>> {
    let m = counts.len();
    if !(2..=4).contains(&m) {
        return Err(Error::InvalidParameter(format!(
            "grid oracle refuses m = {m}"
        )));
    }
    if !(resolution > 0.0 && resolution <= 1e-3) {
        return Err(Error::InvalidParameter(format!(
            "grid resolution {resolution} out of range"
        )));
    }
    if epsilon * m as f64 > 1.0 + 1e-12 {
        return Err(Error::InfeasibleFloor { epsilon, m });
    }

    // Level ladder of integer tick counts (step = 1/ticks keeps every
    // lattice point exactly on the simplex), coarsened by halving until the
    // full coarse sweep stays around 10^5 lattice points.
    let budget = 150_000f64;
    let mut levels = vec![(1.0 / resolution).round() as i64];
    while (*levels.last().unwrap() as f64).powi(m as i32 - 1) > budget {
        let last = *levels.last().unwrap();
        levels.push((last + 1) / 2);
    }
    levels.reverse();

    let mut best: Option<(f64, Vec<f64>)> = None;
    let sweep = |ticks: i64, lo: &[i64], hi: &[i64], best: &mut Option<(f64, Vec<f64>)>| {
        let step = 1.0 / ticks as f64;
        let mut digits = lo.to_vec();
        'sweep: loop {
            let free_sum: i64 = digits.iter().sum();
            if free_sum <= ticks {
                let mut p: Vec<f64> = digits.iter().map(|&d| d as f64 * step).collect();
                p.push((ticks - free_sum) as f64 * step);
                if p.iter().all(|&x| x >= epsilon - 1e-12) {
                    let mut obj = 0.0;
                    for (&c, &x) in counts.iter().zip(&p) {
                        if c > 0 {
                            obj += c as f64 * x.ln();
                        }
                    }
                    if obj.is_finite() && best.as_ref().map_or(true, |(b, _)| obj > *b) {
                        *best = Some((obj, p));
                    }
                }
            }
            for pos in (0..m - 1).rev() {
                digits[pos] += 1;
                if digits[pos] <= hi[pos] {
                    continue 'sweep;
                }
                digits[pos] = lo[pos];
            }
            break;
        }
    };
    let boxed = |ticks: i64, p: &[f64], half: i64| -> (Vec<i64>, Vec<i64>) {
        let lo = p[..m - 1]
            .iter()
            .map(|&x| ((x * ticks as f64).round() as i64 - half).max(0))
            .collect();
        let hi = p[..m - 1]
            .iter()
            .map(|&x| ((x * ticks as f64).round() as i64 + half).min(ticks))
            .collect();
        (lo, hi)
    };

    // coarse-to-fine: full sweep at the coarsest level, then boxes around
    // the running incumbent; the box is generous because the constrained
    // lattice optimum can drift several cells between levels
    let half = 24;
    for (depth, &ticks) in levels.iter().enumerate() {
        match (depth, &best) {
            (0, _) | (_, None) => {
                sweep(ticks, &vec![0; m - 1], &vec![ticks; m - 1], &mut best)
            }
            (_, Some((_, p))) => {
                let (lo, hi) = boxed(ticks, &p.clone(), half);
                sweep(ticks, &lo, &hi, &mut best);
            }
        }
    }
    // polish: re-center at the finest level until no improvement
    let ticks = *levels.last().expect("ladder is nonempty");
    for _ in 0..200 {
        let before = best.as_ref().map(|(obj, _)| *obj);
        if let Some((_, p)) = &best {
            let (lo, hi) = boxed(ticks, &p.clone(), half);
            sweep(ticks, &lo, &hi, &mut best);
        }
        if best.as_ref().map(|(obj, _)| *obj) == before {
            break;
        }
    }
    best.map(|(_, p)| p).ok_or_else(|| {
        Error::InvalidParameter("no feasible lattice point at this resolution".into())
    })
}

/// Fit one node's CPT by solving every parent context independently.
pub fn fit_cpt(counts: &CountTable, policy: &CutoffPolicy) -> Result<Cpt> {
    let eps = policy.epsilon();
    if eps * counts.child_size() as f64 > 1.0 + 1e-12 {
        return Err(Error::InfeasibleFloor {
            epsilon: eps,
            m: counts.child_size(),
        });
    }
    let mut log_rows = Vec::with_capacity(counts.parent_config_count());
    for omega in 0..counts.parent_config_count() {
        let p = solve_context(counts.row(omega), eps)?;
        log_rows.push(p.into_iter().map(f64::ln).collect());
    }
    Ok(Cpt::from_log_rows(
        counts.node(),
        counts.parent_sizes().to_vec(),
        log_rows,
    ))
}

/// Fit the risk-minimizing network in `P_G` under the per-transition floor,
/// returning it with its empirical risk.
pub fn fit_graph(
    data: &Dataset,
    dag: &Dag,
    policy: &CutoffPolicy,
) -> Result<(BayesNet, f64)> {
    if data.is_empty() {
        return Err(Error::EmptyDataset("cannot fit on zero rows".into()));
    }
    policy.check_feasible(data.domain())?;
    let tables = empirical_counts(data, dag)?;
    let cpts = tables
        .iter()
        .map(|t| fit_cpt(t, policy))
        .collect::<Result<Vec<_>>>()?;
    let net = BayesNet::new(data.domain().clone(), dag.clone(), cpts)?;
    let r_emp = empirical_risk(&net, data)?;
    Ok((net, r_emp))
}
