use serde::Serialize;

use crate::error::{Error, Result};
use crate::ngfisk::NgFiskParams;
use crate::scalar::Scalar;

fn check_data<T: Scalar>(data: &[T]) -> Result<()> {
    if data.is_empty() {
        return Err(Error::EmptyData);
    }
    if let Some(bad) = data.iter().find(|x| !(x.is_finite() && **x > T::zero())) {
        return Err(Error::Domain {
            op: "log_likelihood",
            value: bad.as_f64(),
            reason: "observations must be finite and > 0",
        });
    }
    Ok(())
}

/// NG-Fisk log-likelihood assembled from the Fisk baseline:
///
/// ```text
/// n ln θ + n ln(1-δ) + Σ ln f(x) + (θ-1) Σ ln(1-F(x)) - (θ+1) Σ ln(1-δF(x))
/// ```
///
/// Returns `-∞` when a density term underflows.
pub fn log_likelihood<T: Scalar>(p: &NgFiskParams<T>, data: &[T]) -> Result<T> {
    check_data(data)?;
    let [alpha, beta, theta, delta] = p.to_array();
    let n = T::from_usize(data.len()).unwrap();
    let (mut ln_f, mut ln_sf, mut ln_tilt) = (T::zero(), T::zero(), T::zero());
    let ln_scale = (beta / alpha).ln();
    for &x in data {
        let ln_ratio = (x / alpha).ln();
        let odds = beta * ln_ratio;
        let l1 = odds.ln1p_exp();
        let term = ln_scale + (beta - T::one()) * ln_ratio - T::lit(2.0) * l1;
        if term == T::neg_infinity() {
            return Ok(T::neg_infinity());
        }
        ln_f += term;
        ln_sf -= l1;
        ln_tilt += (-delta * odds.logistic()).ln_1p();
    }
    Ok(n * theta.ln() + n * (-delta).ln_1p() + ln_f + (theta - T::one()) * ln_sf - (theta + T::one()) * ln_tilt)
}

/// Gradient of the log-likelihood.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Score<T> {
    pub alpha: T,
    pub beta: T,
    pub theta: T,
    pub delta: T,
}

impl<T: Copy> Score<T> {
    /// Components ordered `[alpha, beta, theta, delta]`.
    pub fn to_array(&self) -> [T; 4] {
        [self.alpha, self.beta, self.theta, self.delta]
    }
}

/// Analytic score. With `w = (1-δ)t / (1 + (1-δ)t)`, `t = (x/α)^β`:
///
/// ```text
/// ∂θ = n/θ - Σ ln(1 + (1-δ)t)
/// ∂δ = -n/(1-δ) + (θ+1)/(1-δ) Σ w
/// ∂α = -nβ/α + (θ+1)(β/α) Σ w
/// ∂β = n/β + Σ ln(x/α) - (θ+1) Σ w ln(x/α)
/// ```
pub fn score<T: Scalar>(p: &NgFiskParams<T>, data: &[T]) -> Result<Score<T>> {
    check_data(data)?;
    Ok(score_from_logs(p, data.iter().map(|x| x.ln())))
}

pub(crate) fn score_from_logs<T: Scalar, I: Iterator<Item = T>>(p: &NgFiskParams<T>, logs: I) -> Score<T> {
    let [alpha, beta, theta, delta] = p.to_array();
    let ln_alpha = alpha.ln();
    let ln_keep = (-delta).ln_1p();
    let (mut n, mut sum_l2, mut sum_w, mut sum_r, mut sum_wr) = (T::zero(), T::zero(), T::zero(), T::zero(), T::zero());
    for ln_x in logs {
        let r = ln_x - ln_alpha;
        let z = ln_keep + beta * r;
        let w = z.logistic();
        n += T::one();
        sum_l2 += z.ln1p_exp();
        sum_w += w;
        sum_r += r;
        sum_wr += w * r;
    }
    let tp1 = theta + T::one();
    let keep = T::one() - delta;
    Score {
        alpha: -n * beta / alpha + tp1 * beta / alpha * sum_w,
        beta: n / beta + sum_r - tp1 * sum_wr,
        theta: n / theta - sum_l2,
        delta: -n / keep + tp1 / keep * sum_w,
    }
}

/// Burr XII form of the log-likelihood from cached `ln x`; the fitting objective.
pub(crate) fn log_likelihood_from_logs(p: &NgFiskParams<f64>, logs: &[f64]) -> f64 {
    let [alpha, beta, theta, delta] = p.to_array();
    let n = logs.len() as f64;
    let ln_alpha = alpha.ln();
    let ln_keep = (-delta).ln_1p();
    let (mut sum_r, mut sum_l2) = (0.0, 0.0);
    for &ln_x in logs {
        let r = ln_x - ln_alpha;
        sum_r += r;
        sum_l2 += (ln_keep + beta * r).ln1p_exp();
    }
    n * (theta.ln() + ln_keep + beta.ln() - ln_alpha) + (beta - 1.0) * sum_r - (theta + 1.0) * sum_l2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::Baseline;
    use proptest::prelude::*;

    fn ng(a: f64, b: f64, t: f64, d: f64) -> NgFiskParams<f64> {
        NgFiskParams::new(a, b, t, d).unwrap()
    }

    #[test]
    fn single_observation_is_log_density() {
        let p = ng(1.0, 1.0, 1.0, 1e-12);
        let ll = log_likelihood(&p, &[1.0]).unwrap();
        assert!((ll - 0.25_f64.ln()).abs() < 1e-11);
        assert!((ll + 1.3863).abs() < 1e-4);
        let q = ng(1.5, 2.0, 2.5, 0.25);
        assert!((log_likelihood(&q, &[0.7]).unwrap() - q.pdf(0.7).unwrap().ln()).abs() < 1e-13);
    }

    #[test]
    fn rejects_bad_data() {
        let p = ng(1.0, 1.0, 1.0, 0.5);
        assert_eq!(log_likelihood(&p, &[]), Err(Error::EmptyData));
        assert!(log_likelihood(&p, &[1.0, 0.0]).is_err());
        assert!(score(&p, &[-1.0]).is_err());
    }

    #[test]
    fn theta_component_single_observation() {
        let p = ng(1.0, 1.0, 1.0, 1e-12);
        let x = 2.0;
        let f = p.as_family().baseline().cdf(x);
        let s = score(&p, &[x]).unwrap();
        assert!((s.theta - (1.0 + (1.0 - f).ln())).abs() < 1e-10);
    }

    fn params() -> impl Strategy<Value = NgFiskParams<f64>> {
        (0.3..4.0_f64, 0.4..5.0_f64, 0.3..8.0_f64, 0.02..0.95_f64).prop_map(|(a, b, t, d)| ng(a, b, t, d))
    }

    proptest! {
        #[test]
        fn matches_sum_of_log_pdf(p in params(), data in proptest::collection::vec(0.01..20.0_f64, 1..60)) {
            let ll = log_likelihood(&p, &data).unwrap();
            let direct: f64 = data.iter().map(|&x| p.pdf(x).unwrap().ln()).sum();
            prop_assert!((ll - direct).abs() <= 1e-9 * direct.abs().max(1.0));
            let logs: Vec<f64> = data.iter().map(|x| x.ln()).collect();
            prop_assert!((log_likelihood_from_logs(&p, &logs) - direct).abs() <= 1e-9 * direct.abs().max(1.0));
        }

        #[test]
        fn theta_score_equals_baseline_form(p in params(), data in proptest::collection::vec(0.01..20.0_f64, 1..40)) {
            let fisk = p.as_family();
            let n = data.len() as f64;
            let eq: f64 = n / p.theta()
                + data.iter().map(|&x| fisk.baseline().ln_sf(x)).sum::<f64>()
                - data.iter().map(|&x| (-p.delta() * fisk.baseline().cdf(x)).ln_1p()).sum::<f64>();
            let s = score(&p, &data).unwrap();
            prop_assert!((s.theta - eq).abs() <= 1e-9 * eq.abs().max(1.0));
        }
    }
}
