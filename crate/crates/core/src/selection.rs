//! Information criteria, the Cramér–von Mises statistic and model ranking.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InfoCriteria<T> {
    pub aic: T,
    pub bic: T,
    pub caic: T,
    pub hqic: T,
}

/// AIC, BIC, corrected AIC and Hannan–Quinn from a negative log-likelihood.
///
/// ```text
/// AIC  = 2k + 2·nll
/// BIC  = k ln n + 2·nll
/// CAIC = AIC + 2k(k+1)/(n-k-1)
/// HQIC = 2k ln ln n + 2·nll
/// ```
pub fn info_criteria<T: Scalar>(nll: T, k: usize, n: usize) -> Result<InfoCriteria<T>> {
    if n <= k + 1 {
        return Err(Error::SampleTooSmall { n, k });
    }
    let kf = T::from_usize(k).unwrap();
    let nf = T::from_usize(n).unwrap();
    let two = T::lit(2.0);
    let aic = two * kf + two * nll;
    Ok(InfoCriteria {
        aic,
        bic: kf * nf.ln() + two * nll,
        caic: aic + two * kf * (kf + T::one()) / (nf - kf - T::one()),
        hqic: two * kf * nf.ln().ln() + two * nll,
    })
}

/// `W² = 1/(12n) + Σ ((2i-1)/(2n) - F(x₍ᵢ₎))²` over the sorted data.
pub fn cramer_von_mises<T: Scalar, F: Fn(T) -> T>(data: &[T], cdf: F) -> Result<T> {
    if data.is_empty() {
        return Err(Error::EmptyData);
    }
    let mut sorted = data.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    let n = T::from_usize(sorted.len()).unwrap();
    let two = T::lit(2.0);
    let mut w2 = T::one() / (T::lit(12.0) * n);
    for (i, &x) in sorted.iter().enumerate() {
        let expected = (two * T::from_usize(i + 1).unwrap() - T::one()) / (two * n);
        let d = expected - cdf(x);
        w2 += d * d;
    }
    Ok(w2)
}

/// One row of a model comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelScore {
    pub name: String,
    pub k: usize,
    pub n: usize,
    pub nll: f64,
    pub aic: f64,
    pub bic: f64,
    pub caic: f64,
    pub hqic: f64,
    pub cm: f64,
}

impl ModelScore {
    pub fn new(name: impl Into<String>, k: usize, n: usize, nll: f64, cm: f64) -> Result<Self> {
        let ic = info_criteria(nll, k, n)?;
        Ok(ModelScore {
            name: name.into(),
            k,
            n,
            nll,
            aic: ic.aic,
            bic: ic.bic,
            caic: ic.caic,
            hqic: ic.hqic,
            cm,
        })
    }
}

/// Sorts ascending by AIC, then BIC, then name.
pub fn rank_models(scores: &[ModelScore]) -> Vec<ModelScore> {
    let mut out = scores.to_vec();
    out.sort_by(|a, b| {
        a.aic
            .total_cmp(&b.aic)
            .then(a.bic.total_cmp(&b.bic))
            .then_with(|| a.name.cmp(&b.name))
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn printed(name: &str, aic: f64, bic: f64) -> ModelScore {
        ModelScore {
            name: name.into(),
            k: 0,
            n: 101,
            nll: f64::NAN,
            aic,
            bic,
            caic: f64::NAN,
            hqic: f64::NAN,
            cm: f64::NAN,
        }
    }

    #[test]
    fn criteria_values() {
        let ic = info_criteria(101.32_f64, 4, 101).unwrap();
        assert!((ic.aic - 210.64).abs() < 1e-9);
        assert!((ic.aic - 210.65).abs() <= 0.01 + 1e-9);
        let zero = info_criteria(0.0, 0, 3).unwrap();
        assert_eq!((zero.aic, zero.bic, zero.caic, zero.hqic), (0.0, 0.0, 0.0, 0.0));
        let ku = info_criteria(103.54_f64, 4, 101).unwrap();
        assert!((ku.aic - 215.08).abs() < 1e-9);
        assert_eq!(info_criteria(1.0, 4, 5), Err(Error::SampleTooSmall { n: 5, k: 4 }));
    }

    #[test]
    fn cm_examples() {
        let w = cramer_von_mises(&[3.0_f64], |_| 0.9).unwrap();
        assert!((w - 0.2433).abs() < 1e-4);
        assert!((w - (1.0 / 12.0 + 0.16)).abs() < 1e-15);
        let data = [1.0, 2.0, 3.0, 4.0];
        let perfect = cramer_von_mises(&data, |x: f64| (2.0 * x - 1.0) / 8.0).unwrap();
        assert!((perfect - 1.0 / 48.0).abs() < 1e-15);
        assert_eq!(cramer_von_mises::<f64, _>(&[], |x| x), Err(Error::EmptyData));
    }

    #[test]
    fn printed_table_ranking() {
        let rows = vec![
            printed("FW", 422.65, 430.93),
            printed("Z-W", 214.45, 224.78),
            printed("NEx-FW", 515.42, 523.12),
            printed("NG-F", 210.65, 221.54),
            printed("KWP", 216.76, 229.54),
            printed("Ku-W", 213.25, 223.71),
        ];
        let names: Vec<_> = rank_models(&rows).into_iter().map(|s| s.name).collect();
        assert_eq!(names, ["NG-F", "Ku-W", "Z-W", "KWP", "FW", "NEx-FW"]);
        let mut rev = rows.clone();
        rev.reverse();
        let again: Vec<_> = rank_models(&rev).into_iter().map(|s| s.name).collect();
        assert_eq!(again, names);
    }

    #[test]
    fn ties_break_on_bic_then_name() {
        let rows = vec![printed("b", 1.0, 2.0), printed("a", 1.0, 2.0), printed("c", 1.0, 1.0)];
        let names: Vec<_> = rank_models(&rows).into_iter().map(|s| s.name).collect();
        assert_eq!(names, ["c", "a", "b"]);
    }

    #[test]
    fn dominant_model_ranks_first() {
        let a = ModelScore::new("small", 2, 50, 40.0, 0.1).unwrap();
        let b = ModelScore::new("big", 4, 50, 41.0, 0.1).unwrap();
        assert_eq!(rank_models(&[b, a])[0].name, "small");
    }

    proptest! {
        #[test]
        fn criteria_increase_with_nll(nll in -500.0..500.0_f64, bump in 1e-6..10.0_f64, k in 0usize..6, extra in 2usize..200) {
            let n = k + extra;
            let lo = info_criteria(nll, k, n).unwrap();
            let hi = info_criteria(nll + bump, k, n).unwrap();
            prop_assert!(hi.aic > lo.aic && hi.bic > lo.bic && hi.caic > lo.caic && hi.hqic > lo.hqic);
        }

        #[test]
        fn cm_floor_and_axis_invariance(data in proptest::collection::vec(0.01..50.0_f64, 1..80), scale in 0.1..3.0_f64) {
            let cdf = |x: f64| x / (1.0 + x);
            let w = cramer_von_mises(&data, cdf).unwrap();
            prop_assert!(w >= 1.0 / (12.0 * data.len() as f64) - 1e-15);
            let moved: Vec<f64> = data.iter().map(|x| x.powf(scale)).collect();
            let w2 = cramer_von_mises(&moved, |y: f64| cdf(y.powf(1.0 / scale))).unwrap();
            prop_assert!((w - w2).abs() < 1e-10);
        }
    }
}
