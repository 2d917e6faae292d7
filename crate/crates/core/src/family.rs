//! The NG-X transform `G = 1 - [(1 - F) / (1 - δF)]^θ` over an arbitrary
//! continuous baseline `F`, and the Fisk (log-logistic) baseline.
//!
//! All quantities are assembled from `ln(1 - F)` and `ln(1 - δF)` so large
//! `θ` does not underflow intermediate powers.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Smallest distance from 0 and 1 a baseline quantile is ever asked for.
pub const QUANTILE_CLAMP: f64 = 1e-15;

/// A continuous baseline distribution the NG-X transform can be applied to.
///
/// Implementors must keep `cdf` nondecreasing on the support, `pdf`
/// nonnegative, and `cdf(quantile(p)) == p` to working precision.
pub trait Baseline<T: Scalar> {
    fn name(&self) -> &str;

    fn support_lo(&self) -> T {
        T::zero()
    }

    fn cdf(&self, x: T) -> T;

    fn pdf(&self, x: T) -> T;

    fn quantile(&self, p: T) -> T;

    /// `ln(1 - F(x))`. Override when a more accurate form exists.
    fn ln_sf(&self, x: T) -> T {
        (-self.cdf(x)).ln_1p()
    }
}

/// Fisk (log-logistic) distribution with scale `alpha` and shape `beta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fisk<T> {
    alpha: T,
    beta: T,
}

impl<T: Scalar> Fisk<T> {
    pub fn new(alpha: T, beta: T) -> Result<Self> {
        check_positive("alpha", alpha)?;
        check_positive("beta", beta)?;
        Ok(Fisk { alpha, beta })
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn beta(&self) -> T {
        self.beta
    }

    /// `β ln(x/α)`, the log of the odds `F / (1 - F)`.
    #[inline]
    fn log_odds(&self, x: T) -> T {
        self.beta * (x / self.alpha).ln()
    }
}

impl<T: Scalar> Baseline<T> for Fisk<T> {
    fn name(&self) -> &str {
        "Fisk"
    }

    fn cdf(&self, x: T) -> T {
        if x <= T::zero() {
            return T::zero();
        }
        self.log_odds(x).logistic()
    }

    fn pdf(&self, x: T) -> T {
        if x <= T::zero() {
            return fisk_density_at_zero(self.alpha, self.beta, T::one());
        }
        let lo = self.log_odds(x);
        let ln_pdf = (self.beta / self.alpha).ln() + (self.beta - T::one()) * (x / self.alpha).ln()
            - T::lit(2.0) * lo.ln1p_exp();
        ln_pdf.exp()
    }

    fn quantile(&self, p: T) -> T {
        self.alpha * (p / (T::one() - p)).powf(self.beta.recip())
    }

    fn ln_sf(&self, x: T) -> T {
        if x <= T::zero() {
            return T::zero();
        }
        -self.log_odds(x).ln1p_exp()
    }
}

/// Value of `scale_factor · (β/α)(x/α)^(β-1)` as `x → 0⁺`.
pub(crate) fn fisk_density_at_zero<T: Scalar>(alpha: T, beta: T, scale_factor: T) -> T {
    if beta < T::one() {
        T::infinity()
    } else if beta == T::one() {
        scale_factor / alpha
    } else {
        T::zero()
    }
}

pub(crate) fn check_positive<T: Scalar>(name: &'static str, v: T) -> Result<()> {
    if v.is_finite() && v > T::zero() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value: v.as_f64(),
            reason: "must be finite and > 0",
        })
    }
}

pub(crate) fn check_unit_open<T: Scalar>(name: &'static str, v: T) -> Result<()> {
    if v > T::zero() && v < T::one() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value: v.as_f64(),
            reason: "must lie in the open interval (0, 1)",
        })
    }
}

pub(crate) fn check_probability<T: Scalar>(op: &'static str, p: T) -> Result<()> {
    if p > T::zero() && p < T::one() {
        Ok(())
    } else {
        Err(Error::Domain {
            op,
            value: p.as_f64(),
            reason: "probability must lie in (0, 1)",
        })
    }
}

/// Family shape `theta > 0` and tilt `delta ∈ (0, 1)`.
///
/// The δ → 0 limit (the plain exponentiated baseline) is not representable;
/// pass a tiny value such as `1e-12` instead.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NgxParams<T> {
    theta: T,
    delta: T,
}

impl<T: Scalar> NgxParams<T> {
    pub fn new(theta: T, delta: T) -> Result<Self> {
        check_positive("theta", theta)?;
        check_unit_open("delta", delta)?;
        Ok(NgxParams { theta, delta })
    }

    pub fn theta(&self) -> T {
        self.theta
    }

    pub fn delta(&self) -> T {
        self.delta
    }
}

/// NG-X distribution built over a baseline `B`.
#[derive(Debug, Clone, Copy)]
pub struct NgxFamily<B, T> {
    baseline: B,
    params: NgxParams<T>,
}

impl<T: Scalar, B: Baseline<T>> NgxFamily<B, T> {
    pub fn new(baseline: B, params: NgxParams<T>) -> Self {
        NgxFamily { baseline, params }
    }

    pub fn baseline(&self) -> &B {
        &self.baseline
    }

    pub fn params(&self) -> NgxParams<T> {
        self.params
    }

    fn check_support(&self, op: &'static str, x: T) -> Result<()> {
        if x.is_nan() || x < self.baseline.support_lo() {
            return Err(Error::Domain {
                op,
                value: x.as_f64(),
                reason: "below the support of the baseline",
            });
        }
        Ok(())
    }

    /// `(ln(1 - F), ln(1 - δF))` at `x`.
    fn log_terms(&self, x: T) -> (T, T) {
        let f = self.baseline.cdf(x);
        (self.baseline.ln_sf(x), (-self.params.delta * f).ln_1p())
    }

    fn ln_sf(&self, x: T) -> T {
        let (ln_sf_base, ln_tilt) = self.log_terms(x);
        self.params.theta * (ln_sf_base - ln_tilt)
    }

    pub fn cdf(&self, x: T) -> Result<T> {
        self.check_support("ngx_cdf", x)?;
        Ok(-self.ln_sf(x).exp_m1())
    }

    pub fn sf(&self, x: T) -> Result<T> {
        self.check_support("ngx_sf", x)?;
        Ok(self.ln_sf(x).exp())
    }

    pub fn pdf(&self, x: T) -> Result<T> {
        self.check_support("ngx_pdf", x)?;
        let base = self.baseline.pdf(x);
        if base == T::zero() || base.is_infinite() {
            return Ok(base);
        }
        let NgxParams { theta, delta } = self.params;
        let (ln_sf_base, ln_tilt) = self.log_terms(x);
        let ln_pdf = theta.ln() + (-delta).ln_1p() + base.ln() + (theta - T::one()) * ln_sf_base
            - (theta + T::one()) * ln_tilt;
        Ok(ln_pdf.exp())
    }

    pub fn hazard(&self, x: T) -> Result<T> {
        self.check_support("ngx_hazard", x)?;
        let (ln_sf_base, ln_tilt) = self.log_terms(x);
        if (self.params.theta * (ln_sf_base - ln_tilt)).exp() == T::zero() {
            return Err(Error::Overflow {
                op: "ngx_hazard",
                value: x.as_f64(),
            });
        }
        let base = self.baseline.pdf(x);
        if base == T::zero() || base.is_infinite() {
            return Ok(base);
        }
        let NgxParams { theta, delta } = self.params;
        let ln_h = theta.ln() + (-delta).ln_1p() + base.ln() - ln_sf_base - ln_tilt;
        Ok(ln_h.exp())
    }

    /// Cumulative hazard `-ln S(x)`; `+∞` once the survival underflows.
    pub fn chf(&self, x: T) -> Result<T> {
        self.check_support("ngx_chf", x)?;
        Ok(-self.ln_sf(x))
    }

    pub fn rhr(&self, x: T) -> Result<T> {
        let cdf = self.cdf(x)?;
        if cdf <= T::zero() {
            return Err(Error::Domain {
                op: "ngx_rhr",
                value: x.as_f64(),
                reason: "reversed hazard undefined where the cdf is 0",
            });
        }
        Ok(self.pdf(x)? / cdf)
    }

    /// Inverse cdf: `F⁻¹((1 - u) / (1 - δu))` with `u = (1 - p)^(1/θ)`.
    ///
    /// The baseline is queried at a probability clamped to
    /// `[1e-15, 1 - 1e-15]` (widened to machine epsilon for `f32`).
    pub fn quantile(&self, p: T) -> Result<T> {
        check_probability("ngx_quantile", p)?;
        let NgxParams { theta, delta } = self.params;
        let one_minus_u = -((-p).ln_1p() / theta).exp_m1();
        let u = T::one() - one_minus_u;
        let target = one_minus_u / (T::one() - delta * u);
        let clamp = T::lit(QUANTILE_CLAMP).max(T::epsilon());
        Ok(self.baseline.quantile(target.max(clamp).min(T::one() - clamp)))
    }
}
