//! Risk functionals and information diagnostics.
//!
//! Risk is negative mean log-likelihood throughout: non-negative for
//! probability-valued hypotheses, smaller is better, and losses of a
//! floor-`lambda` network lie in `[0, -ln lambda]`.

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::model::BayesNet;

/// Largest joint state space accepted for exact enumeration.
pub const MAX_EXACT_STATES: u128 = 1 << 22;

/// `-(1/l) * sum_i log_joint(net, x^i)` in nats.
pub fn empirical_risk(net: &BayesNet, data: &Dataset) -> Result<f64> {
    if net.domain() != data.domain() {
        return Err(Error::DimensionMismatch(
            "network and dataset domains differ".into(),
        ));
    }
    if data.is_empty() {
        return Err(Error::EmptyDataset("empirical risk needs rows".into()));
    }
    let mut total = 0.0;
    for (i, row) in data.rows().iter().enumerate() {
        let lp = net.log_joint(row)?;
        if lp == f64::NEG_INFINITY {
            return Err(Error::SupportViolation { row: i });
        }
        total += lp;
    }
    Ok(-total / data.len() as f64)
}

fn check_enumerable(net: &BayesNet) -> Result<()> {
    let states = net.domain().joint_states()?;
    if states > MAX_EXACT_STATES {
        return Err(Error::StateSpaceTooLarge {
            states,
            limit: MAX_EXACT_STATES,
        });
    }
    Ok(())
}

/// Expected negative log-likelihood of `net` under `truth`, by exact
/// enumeration: `-sum_x truth(x) * ln net(x)`. Equals
/// `entropy(truth) + kl_divergence(truth, net)`.
pub fn true_risk(net: &BayesNet, truth: &BayesNet) -> Result<f64> {
    if net.domain() != truth.domain() {
        return Err(Error::DimensionMismatch(
            "network and truth domains differ".into(),
        ));
    }
    check_enumerable(truth)?;
    let mut total = 0.0;
    for x in truth.assignments()? {
        let p = truth.log_joint(&x)?.exp();
        if p > 0.0 {
            total += p * net.log_joint(&x)?;
        }
    }
    Ok(-total)
}

/// Joint entropy `-sum_x p(x) ln p(x)` in nats.
pub fn entropy(net: &BayesNet) -> Result<f64> {
    check_enumerable(net)?;
    let mut total = 0.0;
    for x in net.assignments()? {
        let lp = net.log_joint(&x)?;
        let p = lp.exp();
        if p > 0.0 {
            total -= p * lp;
        }
    }
    Ok(total)
}

/// `KL(truth || net)`, summed directly over the joint support of `truth`.
pub fn kl_divergence(truth: &BayesNet, net: &BayesNet) -> Result<f64> {
    if net.domain() != truth.domain() {
        return Err(Error::DimensionMismatch(
            "network and truth domains differ".into(),
        ));
    }
    check_enumerable(truth)?;
    let mut total = 0.0;
    for x in truth.assignments()? {
        let lp_truth = truth.log_joint(&x)?;
        let p = lp_truth.exp();
        if p > 0.0 {
            total += p * (lp_truth - net.log_joint(&x)?);
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{CategoricalDomain, Cpt, Dag};

    fn coin(p1: f64) -> BayesNet {
        let domain = CategoricalDomain::binary(1);
        let cpt = Cpt::from_prob_rows(0, vec![], &[vec![1.0 - p1, p1]]).unwrap();
        BayesNet::new(domain, Dag::empty(1), vec![cpt]).unwrap()
    }

    fn uniform_pair() -> BayesNet {
        let domain = CategoricalDomain::binary(2);
        let cpts = (0..2)
            .map(|j| Cpt::from_prob_rows(j, vec![], &[vec![0.5, 0.5]]).unwrap())
            .collect();
        BayesNet::new(domain, Dag::empty(2), cpts).unwrap()
    }

    #[test]
    fn uniform_net_risk_is_ln4() {
        let net = uniform_pair();
        let data = crate::data::Dataset::new(
            net.domain().clone(),
            vec![vec![0, 0], vec![1, 0], vec![1, 1], vec![0, 1]],
        )
        .unwrap();
        let r = empirical_risk(&net, &data).unwrap();
        assert!((r - 4.0f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn support_violation_detected() {
        let net = {
            let domain = CategoricalDomain::binary(1);
            let cpt = Cpt::from_prob_rows(0, vec![], &[vec![1.0, 0.0]]).unwrap();
            BayesNet::new(domain, Dag::empty(1), vec![cpt]).unwrap()
        };
        let data =
            crate::data::Dataset::new(net.domain().clone(), vec![vec![0], vec![1]]).unwrap();
        assert!(matches!(
            empirical_risk(&net, &data),
            Err(Error::SupportViolation { row: 1 })
        ));
    }

    #[test]
    fn true_risk_of_truth_is_entropy() {
        let fair = coin(0.5);
        let r = true_risk(&fair, &fair).unwrap();
        assert!((r - std::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn true_risk_two_term_hand_sum() {
        let truth = coin(0.5);
        let net = coin(0.1); // P(0)=0.9, P(1)=0.1
        let r = true_risk(&net, &truth).unwrap();
        let want = -(0.5 * 0.9f64.ln() + 0.5 * 0.1f64.ln());
        assert!((r - want).abs() < 1e-12);
        assert!((r - 1.2040).abs() < 1e-4);
    }

    #[test]
    fn gibbs_inequality() {
        let truth = coin(0.3);
        for p in [0.1, 0.3, 0.5, 0.9] {
            let r = true_risk(&coin(p), &truth).unwrap();
            let s = entropy(&truth).unwrap();
            assert!(r >= s - 1e-12);
            if (p - 0.3f64).abs() < 1e-12 {
                assert!((r - s).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn entropy_examples() {
        assert!((entropy(&coin(0.5)).unwrap() - std::f64::consts::LN_2).abs() < 1e-12);
        assert!(entropy(&coin(1.0)).unwrap().abs() < 1e-12);
    }

    #[test]
    fn kl_self_is_zero() {
        let net = coin(0.37);
        assert!(kl_divergence(&net, &net).unwrap().abs() < 1e-12);
    }

    #[test]
    fn kl_matches_risk_minus_entropy() {
        let truth = coin(0.3);
        let net = coin(0.6);
        let lhs = true_risk(&net, &truth).unwrap() - entropy(&truth).unwrap();
        let rhs = kl_divergence(&truth, &net).unwrap();
        assert!((lhs - rhs).abs() < 1e-12);
    }
}
