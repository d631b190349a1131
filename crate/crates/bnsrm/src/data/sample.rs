use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::model::BayesNet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Draw `l` i.i.d. samples from `net` by ancestral sampling.
///
/// Each row uses its own RNG stream derived from `(seed, row)`, so the
/// output is independent of evaluation order and a fixed seed always yields
/// the same dataset. One uniform variate is consumed per node per row.
pub fn forward_sample(net: &BayesNet, l: usize, seed: u64) -> Result<Dataset> {
    let violations = net.validate();
    if !violations.is_empty() {
        return Err(Error::InvalidNetwork(
            violations.iter().map(|v| v.to_string()).collect(),
        ));
    }
    if l == 0 {
        return Err(Error::InvalidParameter("sample count must be >= 1".into()));
    }
    let order = net.dag().topological_order()?;
    let domain = net.domain();
    let mut rows = Vec::with_capacity(l);
    for i in 0..l {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let mut x = vec![usize::MAX; domain.n()];
        for &j in &order {
            let cpt = net.cpt(j);
            let mut omega = 0;
            for &p in net.dag().parents(j) {
                omega = omega * domain.size(p) + x[p];
            }
            let u: f64 = rng.gen();
            // inverse CDF over the context row; zero-probability values
            // contribute nothing to the running sum and are never drawn
            let row = cpt.log_row(omega);
            let mut cum = 0.0;
            let mut picked = row.len() - 1;
            for (v, &lp) in row.iter().enumerate() {
                cum += lp.exp();
                if u < cum {
                    picked = v;
                    break;
                }
            }
            x[j] = picked;
        }
        rows.push(x);
    }
    Dataset::new(domain.clone(), rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{empirical_counts, node_counts};
    use crate::model::{CategoricalDomain, Cpt, Dag};

    fn fair_coin() -> BayesNet {
        let domain = CategoricalDomain::binary(1);
        let cpt = Cpt::from_prob_rows(0, vec![], &[vec![0.5, 0.5]]).unwrap();
        BayesNet::new(domain, Dag::empty(1), vec![cpt]).unwrap()
    }

    fn deterministic_copy() -> BayesNet {
        let domain = CategoricalDomain::binary(2);
        let dag = Dag::from_edges(2, &[(0, 1)]).unwrap();
        let cpts = vec![
            Cpt::from_prob_rows(0, vec![], &[vec![0.5, 0.5]]).unwrap(),
            Cpt::from_prob_rows(1, vec![2], &[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap(),
        ];
        BayesNet::new(domain, dag, cpts).unwrap()
    }

    #[test]
    fn fixed_seed_reproducible() {
        let net = fair_coin();
        let a = forward_sample(&net, 10, 7).unwrap();
        let b = forward_sample(&net, 10, 7).unwrap();
        assert_eq!(a, b);
        let c = forward_sample(&net, 10, 8).unwrap();
        assert_ne!(a, c, "different seed should give a different bit-string");
    }

    #[test]
    fn zero_probability_outcomes_never_drawn() {
        let net = deterministic_copy();
        let data = forward_sample(&net, 500, 3).unwrap();
        assert!(data.rows().iter().all(|r| r[0] == r[1]));
    }

    #[test]
    fn fair_coin_frequency_concentrates() {
        let net = fair_coin();
        let data = forward_sample(&net, 100_000, 11).unwrap();
        let ones = data.rows().iter().filter(|r| r[0] == 1).count();
        let freq = ones as f64 / data.len() as f64;
        assert!((freq - 0.5).abs() < 0.01, "freq {freq}");
    }

    #[test]
    fn counts_total_l_after_sampling() {
        let net = deterministic_copy();
        let data = forward_sample(&net, 250, 1).unwrap();
        let dag = Dag::from_edges(2, &[(0, 1)]).unwrap();
        for t in empirical_counts(&data, &dag).unwrap() {
            assert_eq!(t.total(), 250);
        }
    }

    #[test]
    fn conditionals_converge_to_cpt_rows() {
        // X2 depends on X1 with rows (0.7,0.3) and (0.2,0.8)
        let domain = CategoricalDomain::binary(2);
        let dag = Dag::from_edges(2, &[(0, 1)]).unwrap();
        let cpts = vec![
            Cpt::from_prob_rows(0, vec![], &[vec![0.4, 0.6]]).unwrap(),
            Cpt::from_prob_rows(1, vec![2], &[vec![0.7, 0.3], vec![0.2, 0.8]]).unwrap(),
        ];
        let net = BayesNet::new(domain, dag, cpts).unwrap();
        let data = forward_sample(&net, 100_000, 5).unwrap();
        let t = node_counts(&data, 1, &[0]).unwrap();
        for (omega, expected) in [(0usize, 0.7f64), (1, 0.2)] {
            let row = t.row(omega);
            let total: u64 = row.iter().sum();
            let freq = row[0] as f64 / total as f64;
            assert!((freq - expected).abs() < 0.02, "context {omega}: {freq}");
        }
    }

    #[test]
    fn invalid_net_rejected() {
        let domain = CategoricalDomain::binary(1);
        let bad = Cpt::from_log_rows(0, vec![], vec![vec![0.4f64.ln(), 0.4f64.ln()]]);
        let net = BayesNet::new_unchecked(domain, Dag::empty(1), vec![bad]);
        assert!(forward_sample(&net, 5, 0).is_err());
    }
}
