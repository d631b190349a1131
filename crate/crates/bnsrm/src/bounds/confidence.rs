//! Uniform-convergence confidence terms.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Certified risk statement: with probability at least `1 - eta` over the
/// sample, the true risk of the reported network is at most `bound`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RiskBound {
    /// Empirical risk of the selected network, nats.
    pub r_emp: f64,
    /// Confidence term, nats.
    pub phi: f64,
    /// `r_emp + phi`.
    pub bound: f64,
    pub eta: f64,
    /// Joint-probability cutoff of the selected class.
    pub lambda: f64,
    /// VC upper bound used for the class.
    pub h: u128,
    /// In-degree class index, when selected by structural risk minimization.
    pub k: Option<usize>,
    /// Cutoff ladder index, when applicable.
    pub m: Option<usize>,
    /// Prior weight of the selected cell.
    pub q: Option<f64>,
}

/// General confidence term for losses bounded in `[a, b]`:
/// `(b - a) * sqrt((h (ln(2l/h) + 1) - ln(eta/4) + 1) / l)`.
pub fn confidence_term_general(a: f64, b: f64, l: usize, h: u128, eta: f64) -> Result<f64> {
    if b < a {
        return Err(Error::InvalidParameter(format!(
            "loss range [{a}, {b}] is empty"
        )));
    }
    if l == 0 || h == 0 {
        return Err(Error::InvalidParameter(
            "need l >= 1 and h >= 1".into(),
        ));
    }
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "eta must be in (0, 1), got {eta}"
        )));
    }
    let lf = l as f64;
    let hf = h as f64;
    let inner = hf * ((2.0 * lf / hf).ln() + 1.0) - (eta / 4.0).ln() + 1.0;
    if inner < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "confidence radical is negative (h = {h} far exceeds l = {l})"
        )));
    }
    Ok((b - a) * (inner / lf).sqrt())
}

/// Cutoff form: losses in `[0, -ln lambda]`.
pub fn confidence_term(lambda: f64, l: usize, h: u128, eta: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "lambda must be in (0, 1], got {lambda}"
        )));
    }
    confidence_term_general(0.0, -lambda.ln(), l, h, eta)
}

/// Structural-risk cell confidence: `confidence_term(2^-m, l, h_k, q * eta)`
/// with the cell's prior weight `q` (default `2^-(k+m)`).
pub fn srm_confidence(
    m: usize,
    k: usize,
    l: usize,
    h_k: u128,
    eta: f64,
    q: Option<f64>,
) -> Result<f64> {
    if m == 0 {
        return Err(Error::InvalidParameter("cutoff index m must be >= 1".into()));
    }
    let q = match q {
        Some(q) if q > 0.0 && q <= 1.0 => q,
        Some(q) => {
            return Err(Error::InvalidParameter(format!(
                "prior weight must be in (0, 1], got {q}"
            )))
        }
        None => 0.5f64.powi((k + m) as i32),
    };
    confidence_term(0.5f64.powi(m as i32), l, h_k, q * eta)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_one_is_zero() {
        for (l, h, eta) in [(10usize, 1u128, 0.5f64), (1000, 10, 0.05)] {
            assert_eq!(confidence_term(1.0, l, h, eta).unwrap(), 0.0);
        }
    }

    #[test]
    fn desk_value() {
        // 4.60517 * sqrt(68.3652 / 1000)
        let phi = confidence_term(0.01, 1000, 10, 0.05).unwrap();
        assert!((phi - 1.2041).abs() < 1e-3, "phi = {phi}");
    }

    #[test]
    fn decreasing_in_l() {
        let a = confidence_term(0.01, 1_000, 10, 0.05).unwrap();
        let b = confidence_term(0.01, 100_000, 10, 0.05).unwrap();
        assert!(b < a);
    }

    #[test]
    fn linear_in_minus_ln_lambda() {
        let phi1 = confidence_term(0.1, 500, 7, 0.1).unwrap();
        let phi2 = confidence_term(0.01, 500, 7, 0.1).unwrap();
        assert!((phi2 - 2.0 * phi1).abs() < 1e-12);
    }

    #[test]
    fn srm_is_definition() {
        let direct = confidence_term(0.5, 2000, 12, 0.05 / 2.0).unwrap();
        let srm = srm_confidence(1, 0, 2000, 12, 0.05, Some(0.5)).unwrap();
        assert_eq!(direct, srm);
    }

    #[test]
    fn srm_matches_displayed_expansion() {
        // n = 5 binary, k = 2, m = 3, l = 10^4, eta = 0.05, h = n * 2^(k+1)
        let (n, k, m, l, eta) = (5.0f64, 2usize, 3usize, 10_000usize, 0.05f64);
        let h = (n * 2.0f64.powi(k as i32 + 1)) as u128; // 40
        let via_def = srm_confidence(m, k, l, h, eta, None).unwrap();
        let hf = h as f64;
        let lf = l as f64;
        let ln2 = std::f64::consts::LN_2;
        let inner = hf * ((2.0 * lf / hf).ln() + 1.0) - (eta / 4.0).ln()
            + (k + m) as f64 * ln2
            + 1.0;
        let displayed = m as f64 * ln2 * (inner / lf).sqrt();
        assert!((via_def - displayed).abs() < 1e-12);
    }

    #[test]
    fn grows_in_k_and_m() {
        let n = 5.0f64;
        let l = 10_000;
        let mut prev_k = 0.0;
        for k in 1..=6usize {
            let h = (n * 2.0f64.powi(k as i32 + 1)) as u128;
            let phi = srm_confidence(3, k, l, h, 0.05, None).unwrap();
            assert!(phi > prev_k);
            prev_k = phi;
        }
        let mut prev_m = 0.0;
        for m in 1..=6usize {
            let phi = srm_confidence(m, 2, l, 40, 0.05, None).unwrap();
            assert!(phi > prev_m);
            prev_m = phi;
        }
    }

    #[test]
    fn parameter_validation() {
        assert!(confidence_term(0.0, 10, 1, 0.5).is_err());
        assert!(confidence_term(0.5, 0, 1, 0.5).is_err());
        assert!(confidence_term(0.5, 10, 0, 0.5).is_err());
        assert!(confidence_term(0.5, 10, 1, 1.0).is_err());
        assert!(srm_confidence(0, 0, 10, 1, 0.5, None).is_err());
    }
}
