use crate::error::Result;
use crate::ngfisk::NgFiskParams;

use super::likelihood::{log_likelihood, log_likelihood_from_logs, score_from_logs};
use super::{fit_sample, FitOptions, FitResult, LikelihoodModel, ParamBox, Sample, Transform};

/// Largest log-likelihood change along constant `c` still counted as flat.
pub const RIDGE_TOLERANCE: f64 = 1e-9;

/// Tilt used by the starting heuristic.
const START_DELTA: f64 = 0.25;

/// α ∈ [1e-4, 1e4], β ∈ [1e-4, 1e3], θ ∈ [1e-2, 10], δ ∈ [0.01, 0.99].
pub fn ngfisk_default_box() -> ParamBox {
    ParamBox::new(
        ["alpha", "beta", "theta", "delta"].iter().map(|s| s.to_string()).collect(),
        vec![1e-4, 1e-4, 1e-2, 0.01],
        vec![1e4, 1e3, 10.0, 0.99],
    )
    .expect("default box is valid")
}

/// NG-Fisk likelihood in the parameter order `[alpha, beta, theta, delta]`.
#[derive(Debug, Clone, Copy, Default)]
pub struct NgFiskModel;

/// `ln((1-p)^(-1/θ) - 1)`, the log of the standard Burr XII quantile raised to β.
fn burr_log_quantile(p: f64, theta: f64) -> f64 {
    (-(-p).ln_1p() / theta).exp_m1().ln()
}

/// Burr XII `(c, β, θ)` whose quartiles match the sample's.
fn quartile_match(sample: &Sample, theta_lo: f64, theta_hi: f64) -> (f64, f64, f64) {
    let (q1, q2, q3) = sample.quartiles();
    let (l1, l2, l3) = (q1.ln(), q2.ln(), q3.ln());
    let spread = l3 - l1;
    if !(spread.is_finite() && spread > 0.0) {
        return (q2, 1.0, 1.0);
    }
    let target = (l2 - l1) / spread;
    let steps = 200;
    let (lo, hi) = (theta_lo.ln(), theta_hi.ln());
    let mut best = (f64::INFINITY, 1.0_f64.clamp(theta_lo, theta_hi));
    for s in 0..=steps {
        let theta = (lo + (hi - lo) * s as f64 / steps as f64).exp();
        let (g1, g2, g3) = (
            burr_log_quantile(0.25, theta),
            burr_log_quantile(0.5, theta),
            burr_log_quantile(0.75, theta),
        );
        let miss = ((g2 - g1) / (g3 - g1) - target).abs();
        if miss < best.0 {
            best = (miss, theta);
        }
    }
    let theta = best.1;
    let (g1, g2, g3) = (
        burr_log_quantile(0.25, theta),
        burr_log_quantile(0.5, theta),
        burr_log_quantile(0.75, theta),
    );
    let beta = (g3 - g1) / spread;
    let c = (l2 - g2 / beta).exp();
    (c, beta, theta)
}

impl LikelihoodModel for NgFiskModel {
    fn name(&self) -> &str {
        "NG-F"
    }

    fn param_names(&self) -> Vec<String> {
        ["alpha", "beta", "theta", "delta"].iter().map(|s| s.to_string()).collect()
    }

    fn default_box(&self) -> ParamBox {
        ngfisk_default_box()
    }

    fn transforms(&self) -> Vec<Transform> {
        vec![Transform::Log, Transform::Log, Transform::Log, Transform::Logit]
    }

    fn nll(&self, params: &[f64], sample: &Sample) -> f64 {
        match NgFiskParams::from_slice(params) {
            Ok(p) => {
                let ll = log_likelihood_from_logs(&p, sample.logs());
                if ll.is_nan() {
                    f64::INFINITY
                } else {
                    -ll
                }
            }
            Err(_) => f64::INFINITY,
        }
    }

    fn score(&self, params: &[f64], sample: &Sample) -> Option<Vec<f64>> {
        let p = NgFiskParams::from_slice(params).ok()?;
        let s = score_from_logs(&p, sample.logs().iter().copied());
        let v = s.to_array().to_vec();
        v.iter().all(|g| g.is_finite()).then_some(v)
    }

    fn initial_guess(&self, sample: &Sample, bounds: &ParamBox) -> Vec<f64> {
        let (theta_lo, theta_hi) = bounds.bounds(2);
        let (c, beta, theta) = quartile_match(sample, theta_lo, theta_hi);
        let (d_lo, d_hi) = bounds.bounds(3);
        let delta = START_DELTA.clamp(d_lo, d_hi);
        let alpha = c * (1.0 - delta).powf(1.0 / beta);
        vec![alpha, beta, theta, delta]
    }
}

/// Absolute log-likelihood change when `(α, δ)` moves along constant
/// `c = α(1-δ)^(-1/β)` to a second tilt.
pub fn ridge_gap(params: &NgFiskParams<f64>, sample: &Sample) -> Result<f64> {
    let [_, beta, theta, delta] = params.to_array();
    let other = if delta > 0.5 { delta - 0.4 } else { delta + 0.4 };
    let c = params.effective_scale();
    let moved = NgFiskParams::new(c * (1.0 - other).powf(1.0 / beta), beta, theta, other)?;
    let here = log_likelihood(params, sample.values())?;
    let there = log_likelihood(&moved, sample.values())?;
    Ok((here - there).abs())
}

/// Fits NG-Fisk by maximum likelihood.
///
/// The result carries the effective scale `ĉ` and the ridge flag. Hold the
/// tilt fixed with `FitOptions::with_fixed(3, δ)` to profile the remaining
/// parameters.
pub fn fit_mle(data: &[f64], opts: &FitOptions) -> Result<FitResult> {
    let sample = Sample::new(data)?;
    let mut fit = fit_sample(&NgFiskModel, &sample, opts)?;
    let p = NgFiskParams::from_slice(&fit.estimates)?;
    fit.effective_scale = Some(p.effective_scale());
    fit.ridge = Some(ridge_gap(&p, &sample)? < RIDGE_TOLERANCE);
    Ok(fit)
}
