//! The NG-Fisk distribution in closed form.
//!
//! Algebraically NG-Fisk is a Burr XII law: with `c = α(1-δ)^(-1/β)`,
//! `S(x) = (1 + (x/c)^β)^(-θ)`. Every function here is evaluated through
//! `z = ln(1-δ) + β ln(x/α)` and `ln(1 + e^z)`, which keeps large shapes and
//! far tails finite.

use rand::distributions::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::distribution::LifetimeDistribution;
use crate::error::{Error, Result};
use crate::family::{check_positive, check_probability, check_unit_open, fisk_density_at_zero, Fisk, NgxFamily, NgxParams};
use crate::quadrature::{integrate_to_inf, QuadOptions};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NgFiskParams<T> {
    alpha: T,
    beta: T,
    theta: T,
    delta: T,
}

/// Burr XII parameters `(c, β, θ)` the NG-Fisk density actually depends on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EffectiveBurrParams<T> {
    pub c: T,
    pub beta: T,
    pub theta: T,
}

impl<T: Scalar> EffectiveBurrParams<T> {
    pub fn cdf(&self, x: T) -> T {
        if x <= T::zero() {
            return T::zero();
        }
        -(-self.theta * (self.beta * (x / self.c).ln()).ln1p_exp()).exp_m1()
    }
}

/// Result of a moment query. Moments of order `r ≥ βθ` do not exist.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Moment<T> {
    Finite(T),
    Divergent,
}

impl<T: Scalar> Moment<T> {
    pub fn value(self) -> Option<T> {
        match self {
            Moment::Finite(v) => Some(v),
            Moment::Divergent => None,
        }
    }
}

/// Survival, hazard, cumulative hazard and reversed hazard at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct Reliability<T> {
    pub survival: T,
    pub hazard: T,
    pub chf: T,
    pub rhr: Result<T>,
}

impl<T: Scalar> NgFiskParams<T> {
    pub fn new(alpha: T, beta: T, theta: T, delta: T) -> Result<Self> {
        check_positive("alpha", alpha)?;
        check_positive("beta", beta)?;
        check_positive("theta", theta)?;
        check_unit_open("delta", delta)?;
        Ok(NgFiskParams {
            alpha,
            beta,
            theta,
            delta,
        })
    }

    /// Builds parameters from a slice ordered `[alpha, beta, theta, delta]`.
    pub fn from_slice(v: &[T]) -> Result<Self> {
        match *v {
            [a, b, t, d] => Self::new(a, b, t, d),
            _ => Err(Error::Arity {
                model: "NG-F",
                expected: 4,
                got: v.len(),
            }),
        }
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn beta(&self) -> T {
        self.beta
    }

    pub fn theta(&self) -> T {
        self.theta
    }

    pub fn delta(&self) -> T {
        self.delta
    }

    pub fn to_array(&self) -> [T; 4] {
        [self.alpha, self.beta, self.theta, self.delta]
    }

    /// The same distribution expressed as the generic transform over Fisk.
    pub fn as_family(&self) -> NgxFamily<Fisk<T>, T> {
        NgxFamily::new(
            Fisk::new(self.alpha, self.beta).expect("validated"),
            NgxParams::new(self.theta, self.delta).expect("validated"),
        )
    }

    pub fn effective_burr(&self) -> EffectiveBurrParams<T> {
        EffectiveBurrParams {
            c: self.effective_scale(),
            beta: self.beta,
            theta: self.theta,
        }
    }

    /// `c = α(1-δ)^(-1/β)`.
    pub fn effective_scale(&self) -> T {
        self.alpha * ((-self.delta).ln_1p() / -self.beta).exp()
    }

    fn check_x(op: &'static str, x: T) -> Result<()> {
        if x.is_nan() || x < T::zero() {
            return Err(Error::Domain {
                op,
                value: x.as_f64(),
                reason: "x must be >= 0",
            });
        }
        Ok(())
    }

    /// `ln(1 + (1-δ)(x/α)^β)` for `x > 0`.
    #[inline]
    fn log_tail(&self, x: T) -> T {
        ((-self.delta).ln_1p() + self.beta * (x / self.alpha).ln()).ln1p_exp()
    }

    /// `ln[θ(1-δ)(β/α)(x/α)^(β-1)]` for `x > 0`.
    #[inline]
    fn ln_hazard_numerator(&self, x: T) -> T {
        self.theta.ln() + (-self.delta).ln_1p() + (self.beta / self.alpha).ln()
            + (self.beta - T::one()) * (x / self.alpha).ln()
    }

    fn density_at_zero(&self) -> T {
        fisk_density_at_zero(self.alpha, self.beta, self.theta * (T::one() - self.delta))
    }

    pub fn cdf(&self, x: T) -> Result<T> {
        Self::check_x("cdf", x)?;
        if x == T::zero() {
            return Ok(T::zero());
        }
        Ok(-(-self.theta * self.log_tail(x)).exp_m1())
    }

    /// Density. At `x = 0` it is `+∞` when `β < 1`.
    pub fn pdf(&self, x: T) -> Result<T> {
        Self::check_x("pdf", x)?;
        if x == T::zero() {
            return Ok(self.density_at_zero());
        }
        Ok(self.ln_pdf_unchecked(x).exp())
    }

    pub(crate) fn ln_pdf_unchecked(&self, x: T) -> T {
        self.ln_hazard_numerator(x) - (self.theta + T::one()) * self.log_tail(x)
    }

    pub fn sf(&self, x: T) -> Result<T> {
        Self::check_x("sf", x)?;
        if x == T::zero() {
            return Ok(T::one());
        }
        Ok((-self.theta * self.log_tail(x)).exp())
    }

    pub fn hazard(&self, x: T) -> Result<T> {
        Self::check_x("hazard", x)?;
        if x == T::zero() {
            return Ok(self.density_at_zero());
        }
        Ok((self.ln_hazard_numerator(x) - self.log_tail(x)).exp())
    }

    pub fn chf(&self, x: T) -> Result<T> {
        Self::check_x("chf", x)?;
        if x == T::zero() {
            return Ok(T::zero());
        }
        Ok(self.theta * self.log_tail(x))
    }

    pub fn rhr(&self, x: T) -> Result<T> {
        let cdf = self.cdf(x)?;
        if cdf <= T::zero() {
            return Err(Error::Domain {
                op: "rhr",
                value: x.as_f64(),
                reason: "reversed hazard undefined where the cdf is 0",
            });
        }
        Ok(self.pdf(x)? / cdf)
    }

    pub fn reliability(&self, x: T) -> Result<Reliability<T>> {
        Ok(Reliability {
            survival: self.sf(x)?,
            hazard: self.hazard(x)?,
            chf: self.chf(x)?,
            rhr: self.rhr(x),
        })
    }

    /// `α[((1-p)^(-1/θ) - 1)/(1-δ)]^(1/β)`.
    pub fn quantile(&self, p: T) -> Result<T> {
        check_probability("quantile", p)?;
        let ln_odds = (-(-p).ln_1p() / self.theta).exp_m1().ln() - (-self.delta).ln_1p();
        Ok(self.alpha * (ln_odds / self.beta).exp())
    }

    pub fn median(&self) -> T {
        self.quantile(T::lit(0.5)).expect("0.5 is a valid probability")
    }

    fn q(&self, p: f64) -> T {
        self.quantile(T::lit(p)).expect("fixed probability in (0, 1)")
    }

    /// Galton's quartile skewness `(Q3 - 2Q2 + Q1) / (Q3 - Q1)`.
    pub fn galton_skewness(&self) -> T {
        let (q1, q2, q3) = (self.q(0.25), self.q(0.5), self.q(0.75));
        (q3 - T::lit(2.0) * q2 + q1) / (q3 - q1)
    }

    /// Moors' octile kurtosis.
    pub fn moors_kurtosis(&self) -> T {
        let num = self.q(0.875) - self.q(0.625) + self.q(0.375) - self.q(0.125);
        num / (self.q(0.75) - self.q(0.25))
    }

    /// Draws `n` values by inverse transform from a ChaCha8 stream seeded with `seed`.
    pub fn sample(&self, n: usize, seed: u64) -> Vec<T> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.sample_with(&mut rng, n)
    }

    pub fn sample_with<R: Rng + ?Sized>(&self, rng: &mut R, n: usize) -> Vec<T> {
        (0..n)
            .map(|_| {
                let u: f64 = rng.sample(Open01);
                self.quantile(T::lit(u)).expect("open unit interval")
            })
            .collect()
    }

    /// Raw moment `E[X^r]`, or [`Moment::Divergent`] when `r ≥ βθ`.
    ///
    /// Integrates the quantile function over the probability scale, written
    /// as `v = -ln(1 - u)` so the heavy tail becomes a slowly decaying
    /// exponential on `[0, ∞)`.
    pub fn raw_moment(&self, r: u32) -> Result<Moment<T>> {
        if r == 0 {
            return Err(Error::Domain {
                op: "raw_moment",
                value: 0.0,
                reason: "order must be >= 1",
            });
        }
        let order = T::from_u32(r).expect("small integer");
        if order >= self.beta * self.theta {
            return Ok(Moment::Divergent);
        }
        let ln_c = self.effective_scale().ln();
        let (theta, exponent) = (self.theta, order / self.beta);
        let integrand = |v: T| {
            if v <= T::zero() {
                return T::zero();
            }
            (order * ln_c + exponent * (v / theta).exp_m1().ln() - v).exp()
        };
        let opts = QuadOptions {
            rel_tol: T::lit(1e-10).max(T::epsilon() * T::lit(50.0)),
            ..QuadOptions::default()
        };
        Ok(Moment::Finite(integrate_to_inf(integrand, T::zero(), opts).value))
    }

    /// Central moment of order `r`, assembled from raw moments.
    pub fn central_moment(&self, r: u32) -> Result<Moment<T>> {
        if r == 0 {
            return Ok(Moment::Finite(T::one()));
        }
        let mean = match self.raw_moment(1)? {
            Moment::Finite(m) => m,
            Moment::Divergent => return Ok(Moment::Divergent),
        };
        let mut total = T::zero();
        let mut binom = T::one();
        for k in 0..=r {
            let raw = if k == 0 {
                T::one()
            } else {
                match self.raw_moment(k)? {
                    Moment::Finite(m) => m,
                    Moment::Divergent => return Ok(Moment::Divergent),
                }
            };
            total += binom * raw * (-mean).powi((r - k) as i32);
            binom = binom * T::from_u32(r - k).unwrap() / T::from_u32(k + 1).unwrap();
        }
        Ok(Moment::Finite(total))
    }

    /// Density of the `i`-th of `n` order statistics.
    pub fn order_stat_pdf(&self, i: usize, n: usize, x: T) -> Result<T> {
        if i == 0 || i > n {
            return Err(Error::Domain {
                op: "order_stat_pdf",
                value: i as f64,
                reason: "index must satisfy 1 <= i <= n",
            });
        }
        let pdf = self.pdf(x)?;
        if pdf == T::zero() || pdf.is_infinite() {
            // cdf(0) = 0 so only i = 1 keeps the boundary value.
            return Ok(if i == 1 { T::from_usize(n).unwrap() * pdf } else { T::zero() });
        }
        let ln_coef = ln_order_stat_coefficient::<T>(i, n);
        let cdf = self.cdf(x)?;
        let ln_sf = -self.theta * self.log_tail(x);
        let lower = T::from_usize(i - 1).unwrap();
        let upper = T::from_usize(n - i).unwrap();
        let ln_cdf_term = if i == 1 { T::zero() } else { lower * cdf.ln() };
        Ok((ln_coef + pdf.ln() + ln_cdf_term + upper * ln_sf).exp())
    }
}

/// `ln[n! / ((i-1)!(n-i)!)] = ln n + ln C(n-1, i-1)`.
fn ln_order_stat_coefficient<T: Scalar>(i: usize, n: usize) -> T {
    let k = (i - 1).min(n - i);
    let m = n - 1;
    let mut acc = T::from_usize(n).unwrap().ln();
    for j in 0..k {
        acc += T::from_usize(m - j).unwrap().ln() - T::from_usize(j + 1).unwrap().ln();
    }
    acc
}

impl<T: Scalar> LifetimeDistribution<T> for NgFiskParams<T> {
    fn name(&self) -> &str {
        "NG-F"
    }

    fn cdf(&self, x: T) -> Result<T> {
        NgFiskParams::cdf(self, x)
    }

    fn pdf(&self, x: T) -> Result<T> {
        NgFiskParams::pdf(self, x)
    }

    fn sf(&self, x: T) -> Result<T> {
        NgFiskParams::sf(self, x)
    }

    fn hazard(&self, x: T) -> Result<T> {
        NgFiskParams::hazard(self, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{integrate_to_inf, QuadOptions};
    use proptest::prelude::*;

    const TINY: f64 = 1e-12;

    fn ng(a: f64, b: f64, t: f64, d: f64) -> NgFiskParams<f64> {
        NgFiskParams::new(a, b, t, d).unwrap()
    }

    fn reference() -> NgFiskParams<f64> {
        ng(1.5, 2.0, 2.5, 0.25)
    }

    /// Inverts the cdf by bisection; independent of the closed-form quantile.
    fn bisect_quantile(p: &NgFiskParams<f64>, prob: f64) -> f64 {
        let (mut lo, mut hi) = (0.0, 1.0);
        while p.cdf(hi).unwrap() < prob {
            hi *= 2.0;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if p.cdf(mid).unwrap() < prob {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn construction_rejects_invalid() {
        assert!(NgFiskParams::new(0.0, 1.0, 1.0, 0.5).is_err());
        assert!(NgFiskParams::new(1.0, -1.0, 1.0, 0.5).is_err());
        assert!(NgFiskParams::new(1.0, 1.0, f64::NAN, 0.5).is_err());
        assert!(NgFiskParams::new(1.0, 1.0, 1.0, 1.0).is_err());
        assert!(NgFiskParams::new(1.0, 1.0, 1.0, 0.0).is_err());
        assert!(NgFiskParams::from_slice(&[1.0, 1.0, 1.0]).is_err());
    }

    #[test]
    fn reference_point_values() {
        let p = reference();
        assert!((p.cdf(1.5).unwrap() - (1.0 - 1.75_f64.powf(-2.5))).abs() < 1e-14);
        assert!((p.cdf(1.5).unwrap() - 0.7532).abs() < 1e-4);
        assert!((p.pdf(1.5).unwrap() - 0.352_619_916_510_066_2).abs() < 1e-12);
        let rel = p.reliability(1.5).unwrap();
        assert!((rel.survival - 0.2468).abs() < 1e-4);
        assert!((rel.hazard - 10.0 / 7.0).abs() < 1e-12);
        assert!((rel.rhr.unwrap() - 0.468_183_493_609_695_6).abs() < 1e-12);
    }

    #[test]
    fn limits_at_zero() {
        let p = reference();
        assert_eq!(p.cdf(0.0).unwrap(), 0.0);
        let rel = p.reliability(0.0).unwrap();
        assert_eq!((rel.survival, rel.chf), (1.0, 0.0));
        assert!(rel.rhr.is_err());
        assert_eq!(p.pdf(0.0).unwrap(), 0.0);
        assert!((ng(1.0, 1.0, 1.0, TINY).pdf(0.0).unwrap() - 1.0).abs() < 1e-11);
        assert!(ng(1.0, 0.5, 1.0, 0.5).pdf(0.0).unwrap().is_infinite());
        assert!(p.cdf(-0.1).is_err());
    }

    #[test]
    fn standard_fisk_limit() {
        let p = ng(1.0, 1.0, 1.0, TINY);
        assert!((p.cdf(1.0).unwrap() - 0.5).abs() < 1e-11);
        assert!((p.hazard(1.0).unwrap() - 0.5).abs() < 1e-11);
        assert!((p.quantile(0.5).unwrap() - 1.0).abs() < 1e-11);
    }

    #[test]
    fn median_matches_bisection() {
        let p = reference();
        let oracle = bisect_quantile(&p, 0.5);
        assert!((p.median() - oracle).abs() < 1e-10);
        let closed = 1.5 * ((2f64.powf(1.0 / 2.5) - 1.0) / 0.75).sqrt();
        assert!((p.median() - closed).abs() < 1e-12);
        assert!((p.median() - 0.9790).abs() < 5e-4, "{}", p.median());
        let (q1, q3) = (p.quantile(0.25).unwrap(), p.quantile(0.75).unwrap());
        assert!(q1 < p.median() && p.median() < q3);
    }

    #[test]
    fn quantile_domain() {
        let p = reference();
        assert!(p.quantile(0.0).is_err());
        assert!(p.quantile(1.0).is_err());
        assert!(p.quantile(f64::NAN).is_err());
    }

    #[test]
    fn effective_burr_examples() {
        assert!((ng(2.0, 1.3, 1.0, TINY).effective_scale() - 2.0).abs() < 1e-10);
        let e = reference().effective_burr();
        assert!((e.c - 1.5 * 0.75_f64.powf(-0.5)).abs() < 1e-12);
        assert!((e.c - 1.7321).abs() < 1e-4);
        for k in 1..=100 {
            let x = k as f64 * 0.07;
            assert!((e.cdf(x) - reference().cdf(x).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn sampler_basics() {
        let p = reference();
        assert!(p.sample(0, 1).is_empty());
        assert_eq!(p.sample(50, 9), p.sample(50, 9));
        assert_ne!(p.sample(50, 9), p.sample(50, 10));
        let mut draws = p.sample(100_000, 2024);
        draws.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let med = 0.5 * (draws[49_999] + draws[50_000]);
        assert!((med - 0.979).abs() < 0.01, "{med}");
    }

    #[test]
    fn moments() {
        // Log-logistic mean (π/β)/sin(π/β) with α = 1, β = 2.
        let m = ng(1.0, 2.0, 1.0, TINY).raw_moment(1).unwrap().value().unwrap();
        assert!((m - std::f64::consts::FRAC_PI_2).abs() < 1e-6, "{m}");
        assert_eq!(ng(1.0, 1.0, 1.0, TINY).raw_moment(1).unwrap(), Moment::Divergent);
        assert!(reference().raw_moment(0).is_err());
        assert_eq!(reference().raw_moment(5).unwrap(), Moment::Divergent);
    }

    #[test]
    fn central_moments_from_raw() {
        let p = ng(1.0, 4.0, 3.0, 0.3);
        let m1 = p.raw_moment(1).unwrap().value().unwrap();
        let m2 = p.raw_moment(2).unwrap().value().unwrap();
        let var = p.central_moment(2).unwrap().value().unwrap();
        assert!((var - (m2 - m1 * m1)).abs() < 1e-10);
        let third = p.central_moment(3).unwrap().value().unwrap();
        let oracle = integrate_to_inf(
            |x| (x - m1).powi(3) * p.pdf(x).unwrap(),
            0.0,
            QuadOptions::default(),
        );
        assert!((third - oracle.value).abs() < 1e-7);
        assert_eq!(p.central_moment(0).unwrap(), Moment::Finite(1.0));
        assert_eq!(ng(1.0, 1.0, 1.5, 0.5).central_moment(2).unwrap(), Moment::Divergent);
    }

    #[test]
    fn quantile_shape_measures() {
        let fisk = ng(1.0, 1.0, 1.0, TINY);
        assert!((fisk.galton_skewness() - 0.5).abs() < 1e-9);
        let k = (7.0 - 5.0 / 3.0 + 3.0 / 5.0 - 1.0 / 7.0) / (3.0 - 1.0 / 3.0);
        assert!((fisk.moors_kurtosis() - k).abs() < 1e-9);
        assert!((k - 76.0 / 35.0).abs() < 1e-9);
        let (a, b) = (ng(1.0, 2.3, 1.7, 0.4), ng(7.0, 2.3, 1.7, 0.4));
        assert!((a.galton_skewness() - b.galton_skewness()).abs() < 1e-12);
        assert!((a.moors_kurtosis() - b.moors_kurtosis()).abs() < 1e-12);
    }

    #[test]
    fn order_statistics() {
        let p = reference();
        assert!(p.order_stat_pdf(0, 3, 1.0).is_err());
        assert!(p.order_stat_pdf(4, 3, 1.0).is_err());
        for x in [0.2, 1.0, 3.0] {
            assert!((p.order_stat_pdf(1, 1, x).unwrap() - p.pdf(x).unwrap()).abs() < 1e-14);
            let max = 5.0 * p.pdf(x).unwrap() * p.cdf(x).unwrap().powi(4);
            assert!((p.order_stat_pdf(5, 5, x).unwrap() - max).abs() < 1e-13);
        }
        for (i, n) in [(1, 5), (3, 5), (5, 5)] {
            let q = integrate_to_inf(|x| p.order_stat_pdf(i, n, x).unwrap(), 0.0, QuadOptions::default());
            assert!((q.value - 1.0).abs() < 1e-6, "({i},{n}) {q:?}");
        }
    }

    #[test]
    fn large_theta_tail_is_finite() {
        let p = ng(1.0, 3.0, 500.0, 0.5);
        assert!(p.pdf(5.0).unwrap().is_finite());
        assert!(p.hazard(1e200).unwrap().is_finite());
        assert!(p.chf(1e200).unwrap().is_finite());
    }

    #[test]
    fn single_precision_instance() {
        let p = NgFiskParams::new(1.5_f32, 2.0, 2.5, 0.25).unwrap();
        assert!((p.cdf(1.5).unwrap() - 0.753_166).abs() < 1e-5);
        assert!((p.median() - 0.979).abs() < 1e-3);
    }

    fn params() -> impl Strategy<Value = (f64, f64, f64, f64)> {
        (0.2..6.0_f64, 0.3..6.0_f64, 0.2..9.0_f64, 0.01..0.99_f64)
    }

    proptest! {
        #[test]
        fn closed_forms_agree_with_family((a, b, t, d) in params(), x in 0.001..30.0_f64) {
            let p = ng(a, b, t, d);
            let g = p.as_family();
            let close = |u: f64, v: f64| (u - v).abs() <= 1e-10 * u.abs().max(v.abs()).max(1e-300);
            prop_assert!(close(p.cdf(x).unwrap(), g.cdf(x).unwrap()));
            prop_assert!(close(p.pdf(x).unwrap(), g.pdf(x).unwrap()));
            prop_assert!(close(p.sf(x).unwrap(), g.sf(x).unwrap()));
            prop_assert!(close(p.chf(x).unwrap(), g.chf(x).unwrap()));
            if g.sf(x).unwrap() > 1e-300 {
                prop_assert!(close(p.hazard(x).unwrap(), g.hazard(x).unwrap()));
            }
            if g.cdf(x).unwrap() > 1e-300 {
                prop_assert!(close(p.rhr(x).unwrap(), g.rhr(x).unwrap()));
            }
        }

        #[test]
        fn reparametrization_invariance((a, b, t, d) in params(), d2 in 0.01..0.99_f64, x in 0.001..30.0_f64) {
            let p = ng(a, b, t, d);
            let a2 = p.effective_scale() * (1.0 - d2).powf(1.0 / b);
            let q = ng(a2, b, t, d2);
            prop_assert!((p.cdf(x).unwrap() - q.cdf(x).unwrap()).abs() < 1e-12);
            let (pp, qp) = (p.pdf(x).unwrap(), q.pdf(x).unwrap());
            prop_assert!((pp - qp).abs() <= 1e-12 * pp.max(1.0));
            let (ph, qh) = (p.hazard(x).unwrap(), q.hazard(x).unwrap());
            prop_assert!((ph - qh).abs() <= 1e-12 * ph.max(1.0));
        }

        #[test]
        fn quantile_round_trip((a, b, t, d) in params(), k in 1..1000u32) {
            let p = ng(a, b, t, d);
            let prob = k as f64 / 1000.0;
            prop_assert!((p.cdf(p.quantile(prob).unwrap()).unwrap() - prob).abs() < 1e-10);
        }

        #[test]
        fn skewness_bounded_kurtosis_positive((a, b, t, d) in params()) {
            let p = ng(a, b, t, d);
            let s = p.galton_skewness();
            prop_assert!(s > -1.0 && s < 1.0);
            prop_assert!(p.moors_kurtosis() > 0.0);
        }
    }
}
