//! Rival lifetime models compared against NG-Fisk: NEx-FW, FW, KWP, Ku-W and Z-W.
//!
//! CDFs follow their published closed forms literally. Densities are the
//! analytic derivatives, evaluated in log space.
//!
//! NEx-FW and FW have `G(0) = 1 - e^-1`: their printed CDFs place mass
//! `1 - e^-1` at the origin, so the density integrates to `e^-1` over
//! `(0, ∞)` and their likelihoods are those of a defective density.

use serde::Serialize;

use crate::distribution::LifetimeDistribution;
use crate::error::{Error, Result};
use crate::estimation::{LikelihoodModel, ParamBox, Sample, Transform};
use crate::family::check_positive;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CompetitorKind {
    NexFw,
    Fw,
    Kwp,
    KuW,
    ZW,
}

impl CompetitorKind {
    pub const ALL: [CompetitorKind; 5] = [
        CompetitorKind::NexFw,
        CompetitorKind::Fw,
        CompetitorKind::Kwp,
        CompetitorKind::KuW,
        CompetitorKind::ZW,
    ];

    pub fn label(self) -> &'static str {
        match self {
            CompetitorKind::NexFw => "NEx-FW",
            CompetitorKind::Fw => "FW",
            CompetitorKind::Kwp => "KWP",
            CompetitorKind::KuW => "Ku-W",
            CompetitorKind::ZW => "Z-W",
        }
    }

    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            CompetitorKind::NexFw => &["gamma", "beta", "theta"],
            CompetitorKind::Fw => &["alpha", "gamma", "beta", "theta"],
            CompetitorKind::Kwp => &["a", "b", "c", "beta", "lambda"],
            CompetitorKind::KuW => &["a", "b", "gamma", "theta"],
            CompetitorKind::ZW => &["alpha", "gamma", "theta"],
        }
    }

    pub fn arity(self) -> usize {
        self.param_names().len()
    }

    /// Accepts the display label or a compact spelling (`kuw`, `z-w`, `zweibull`, ...).
    pub fn parse(name: &str) -> Result<Self> {
        let key: String = name
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .map(|c| c.to_ascii_lowercase())
            .collect();
        match key.as_str() {
            "nexfw" => Ok(CompetitorKind::NexFw),
            "fw" => Ok(CompetitorKind::Fw),
            "kwp" => Ok(CompetitorKind::Kwp),
            "kuw" => Ok(CompetitorKind::KuW),
            "zw" | "zweibull" => Ok(CompetitorKind::ZW),
            _ => Err(Error::UnknownModel(name.to_string())),
        }
    }

    pub fn default_box(self) -> ParamBox {
        let names = self.param_names();
        let bounds: Vec<(f64, f64)> = match self {
            CompetitorKind::NexFw => vec![(1e-3, 20.0), (1e-4, 100.0), (1e-5, 100.0)],
            CompetitorKind::Fw => vec![(1e-3, 20.0), (1e-3, 20.0), (1e-4, 100.0), (1e-5, 100.0)],
            CompetitorKind::Kwp => vec![(1e-3, 100.0), (1e-3, 100.0), (1e-2, 20.0), (1e-4, 1e3), (1e-6, 100.0)],
            CompetitorKind::KuW => vec![(1e-3, 100.0), (1e-3, 100.0), (1e-4, 1e3), (1e-2, 20.0)],
            CompetitorKind::ZW => vec![(1e-4, 100.0), (1e-4, 1e3), (1e-2, 20.0)],
        };
        ParamBox::new(
            names.iter().map(|s| s.to_string()).collect(),
            bounds.iter().map(|b| b.0).collect(),
            bounds.iter().map(|b| b.1).collect(),
        )
        .expect("static bounds are ordered")
    }
}

/// `x^e` as `x → 0⁺`.
fn power_at_zero<T: Scalar>(e: T) -> T {
    if e < T::zero() {
        T::infinity()
    } else if e == T::zero() {
        T::one()
    } else {
        T::zero()
    }
}

/// `ln(1 - e^{-g})` for `g > 0`.
#[inline]
fn ln_weibull_cdf<T: Scalar>(g: T) -> T {
    if g > T::LN_2() {
        (-(-g).exp()).ln_1p()
    } else {
        (-(-g).exp_m1()).ln()
    }
}

/// `ln(1 - W^a)` with `W = 1 - e^{-g}`.
#[inline]
fn ln_kumaraswamy_tail<T: Scalar>(g: T, a: T) -> T {
    let ln_w = ln_weibull_cdf(g);
    if ln_w == T::zero() {
        // 1 - W^a ~ a e^{-g} once e^{-g} is below the resolution of 1.
        return a.ln() - g;
    }
    (-(a * ln_w).exp_m1()).ln()
}

/// A competitor model with concrete parameter values.
#[derive(Debug, Clone, PartialEq)]
pub struct Competitor<T> {
    kind: CompetitorKind,
    params: Vec<T>,
}

impl<T: Scalar> Competitor<T> {
    pub fn new(kind: CompetitorKind, params: &[T]) -> Result<Self> {
        if params.len() != kind.arity() {
            return Err(Error::Arity {
                model: kind.label(),
                expected: kind.arity(),
                got: params.len(),
            });
        }
        for (name, &v) in kind.param_names().iter().zip(params) {
            check_positive(name, v)?;
        }
        Ok(Competitor {
            kind,
            params: params.to_vec(),
        })
    }

    pub fn kind(&self) -> CompetitorKind {
        self.kind
    }

    pub fn params(&self) -> &[T] {
        &self.params
    }

    fn check_x(x: T) -> Result<()> {
        if x.is_nan() || x < T::zero() {
            return Err(Error::Domain {
                op: "competitor",
                value: x.as_f64(),
                reason: "x must be >= 0",
            });
        }
        Ok(())
    }

    pub fn cdf(&self, x: T) -> Result<T> {
        Self::check_x(x)?;
        let p = &self.params;
        let one = T::one();
        Ok(match self.kind {
            CompetitorKind::NexFw => {
                let s = p[1] * x.powf(p[0]) + p[2] * x * x;
                -(-s.exp()).exp_m1()
            }
            CompetitorKind::Fw => {
                let s = p[2] * x.powf(p[1]) + p[3] * x.powf(p[0]);
                -(-s.exp()).exp_m1()
            }
            CompetitorKind::Kwp => {
                let (a, b, c, beta, lambda) = (p[0], p[1], p[2], p[3], p[4]);
                if x == T::zero() {
                    return Ok(T::zero());
                }
                let k = self.kumaraswamy_cdf(a, b, (beta * x).powf(c));
                (-lambda * k).exp_m1() / (-lambda).exp_m1()
            }
            CompetitorKind::KuW => {
                if x == T::zero() {
                    return Ok(T::zero());
                }
                self.kumaraswamy_cdf(p[0], p[1], p[2] * x.powf(p[3]))
            }
            CompetitorKind::ZW => {
                let (alpha, gamma, theta) = (p[0], p[1], p[2]);
                let w = -(-gamma * x.powf(theta)).exp_m1();
                ((alpha * w).exp_m1() / alpha.exp_m1()).min(one)
            }
        })
    }

    /// Survival `1 - F(x)`, evaluated without cancellation in the upper tail.
    pub fn sf(&self, x: T) -> Result<T> {
        Self::check_x(x)?;
        let p = &self.params;
        Ok(match self.kind {
            CompetitorKind::NexFw => (-(p[1] * x.powf(p[0]) + p[2] * x * x).exp()).exp(),
            CompetitorKind::Fw => (-(p[2] * x.powf(p[1]) + p[3] * x.powf(p[0])).exp()).exp(),
            CompetitorKind::Kwp => {
                let (a, b, c, beta, lambda) = (p[0], p[1], p[2], p[3], p[4]);
                if x == T::zero() {
                    return Ok(T::one());
                }
                let rest = (b * ln_kumaraswamy_tail((beta * x).powf(c), a)).exp();
                let k = T::one() - rest;
                (-lambda * k).exp() * -(-lambda * rest).exp_m1() / -(-lambda).exp_m1()
            }
            CompetitorKind::KuW => {
                if x == T::zero() {
                    return Ok(T::one());
                }
                (p[1] * ln_kumaraswamy_tail(p[2] * x.powf(p[3]), p[0])).exp()
            }
            CompetitorKind::ZW => {
                let (alpha, gamma, theta) = (p[0], p[1], p[2]);
                let tail = (-gamma * x.powf(theta)).exp();
                (-(-alpha * tail).exp_m1() / -(-alpha).exp_m1()).min(T::one())
            }
        })
    }

    /// `1 - (1 - W^a)^b` with `W = 1 - e^{-g}`.
    fn kumaraswamy_cdf(&self, a: T, b: T, g: T) -> T {
        -(b * ln_kumaraswamy_tail(g, a)).exp_m1()
    }

    /// Log-density for `x > 0`.
    pub fn ln_pdf(&self, x: T) -> T {
        let p = &self.params;
        let ln_x = x.ln();
        match self.kind {
            CompetitorKind::NexFw => {
                let (gamma, beta, theta) = (p[0], p[1], p[2]);
                let s = beta * x.powf(gamma) + theta * x * x;
                let ds = beta * gamma * ((gamma - T::one()) * ln_x).exp() + T::lit(2.0) * theta * x;
                s - s.exp() + ds.ln()
            }
            CompetitorKind::Fw => {
                let (alpha, gamma, beta, theta) = (p[0], p[1], p[2], p[3]);
                let s = beta * x.powf(gamma) + theta * x.powf(alpha);
                let ds = beta * gamma * ((gamma - T::one()) * ln_x).exp()
                    + theta * alpha * ((alpha - T::one()) * ln_x).exp();
                s - s.exp() + ds.ln()
            }
            CompetitorKind::Kwp => {
                let (a, b, c, beta, lambda) = (p[0], p[1], p[2], p[3], p[4]);
                let g = (c * (beta.ln() + ln_x)).exp();
                let ln_w = ln_weibull_cdf(g);
                let ln_tail = ln_kumaraswamy_tail(g, a);
                let k = -(b * ln_tail).exp_m1();
                lambda.ln() - lambda * k + a.ln() + b.ln() + c.ln() + c * beta.ln() + (c - T::one()) * ln_x - g
                    + (a - T::one()) * ln_w
                    + (b - T::one()) * ln_tail
                    - (-(-lambda).exp_m1()).ln()
            }
            CompetitorKind::KuW => {
                let (a, b, gamma, theta) = (p[0], p[1], p[2], p[3]);
                let g = gamma * (theta * ln_x).exp();
                let ln_w = ln_weibull_cdf(g);
                (a * b * gamma * theta).ln() + (theta - T::one()) * ln_x - g
                    + (a - T::one()) * ln_w
                    + (b - T::one()) * ln_kumaraswamy_tail(g, a)
            }
            CompetitorKind::ZW => {
                let (alpha, gamma, theta) = (p[0], p[1], p[2]);
                let g = gamma * (theta * ln_x).exp();
                let w = -(-g).exp_m1();
                (alpha * gamma * theta).ln() + (theta - T::one()) * ln_x - g + alpha * w - alpha.exp_m1().ln()
            }
        }
    }

    pub fn pdf(&self, x: T) -> Result<T> {
        Self::check_x(x)?;
        if x > T::zero() {
            return Ok(self.ln_pdf(x).exp());
        }
        let p = &self.params;
        let one = T::one();
        let e_inv = (-one).exp();
        Ok(match self.kind {
            CompetitorKind::NexFw => e_inv * p[1] * p[0] * power_at_zero(p[0] - one),
            CompetitorKind::Fw => {
                e_inv * (p[2] * p[1] * power_at_zero(p[1] - one) + p[3] * p[0] * power_at_zero(p[0] - one))
            }
            CompetitorKind::Kwp => {
                let (a, b, c, beta, lambda) = (p[0], p[1], p[2], p[3], p[4]);
                lambda / -(-lambda).exp_m1() * a * b * c * beta.powf(a * c) * power_at_zero(a * c - one)
            }
            CompetitorKind::KuW => {
                let (a, b, gamma, theta) = (p[0], p[1], p[2], p[3]);
                a * b * gamma.powf(a) * theta * power_at_zero(a * theta - one)
            }
            CompetitorKind::ZW => {
                let (alpha, gamma, theta) = (p[0], p[1], p[2]);
                alpha * gamma * theta * power_at_zero(theta - one) / alpha.exp_m1()
            }
        })
    }

    /// Probability mass the density carries over `(0, ∞)`.
    pub fn continuous_mass(&self) -> T {
        T::one() - self.cdf(T::zero()).expect("0 is in the support")
    }
}

impl<T: Scalar> LifetimeDistribution<T> for Competitor<T> {
    fn name(&self) -> &str {
        self.kind.label()
    }

    fn cdf(&self, x: T) -> Result<T> {
        Competitor::cdf(self, x)
    }

    fn pdf(&self, x: T) -> Result<T> {
        Competitor::pdf(self, x)
    }

    fn sf(&self, x: T) -> Result<T> {
        Competitor::sf(self, x)
    }
}

/// Maximum-likelihood adapter for a competitor family.
#[derive(Debug, Clone, Copy)]
pub struct CompetitorModel {
    kind: CompetitorKind,
}

impl CompetitorModel {
    pub fn new(kind: CompetitorKind) -> Self {
        CompetitorModel { kind }
    }

    pub fn kind(&self) -> CompetitorKind {
        self.kind
    }
}

/// Weibull `(rate, shape)` matched to the sample's quartiles, used as a seed.
fn weibull_quartile_match(sample: &Sample) -> (f64, f64) {
    let (q1, q2, q3) = sample.quartiles();
    let lnlog = |p: f64| (-(1.0 - p).ln()).ln();
    let spread = (q3 / q1).ln();
    let shape = if spread > 0.0 { (lnlog(0.75) - lnlog(0.25)) / spread } else { 1.0 };
    let shape = shape.clamp(0.05, 20.0);
    let rate = std::f64::consts::LN_2 / q2.powf(shape);
    (rate, shape)
}

impl LikelihoodModel for CompetitorModel {
    fn name(&self) -> &str {
        self.kind.label()
    }

    fn param_names(&self) -> Vec<String> {
        self.kind.param_names().iter().map(|s| s.to_string()).collect()
    }

    fn default_box(&self) -> ParamBox {
        self.kind.default_box()
    }

    fn transforms(&self) -> Vec<Transform> {
        vec![Transform::Log; self.kind.arity()]
    }

    fn nll(&self, params: &[f64], sample: &Sample) -> f64 {
        let Ok(model) = Competitor::new(self.kind, params) else {
            return f64::INFINITY;
        };
        let total: f64 = sample.values().iter().map(|&x| model.ln_pdf(x)).sum();
        if total.is_nan() {
            f64::INFINITY
        } else {
            -total
        }
    }

    fn initial_guess(&self, sample: &Sample, _bounds: &ParamBox) -> Vec<f64> {
        let (rate, shape) = weibull_quartile_match(sample);
        match self.kind {
            CompetitorKind::NexFw => vec![0.5, 0.5, 0.01],
            CompetitorKind::Fw => vec![1.5, 0.5, 0.5, 0.05],
            CompetitorKind::Kwp => vec![1.0, 1.0, shape, rate.powf(1.0 / shape), 0.5],
            CompetitorKind::KuW => vec![1.0, 1.0, rate, shape],
            CompetitorKind::ZW => vec![0.5, rate, shape],
        }
    }

    fn jitter_radius(&self) -> f64 {
        1.5
    }

    /// FW is symmetric under swapping `(γ, β)` with `(α, θ)`; report the
    /// labelling with `γ ≤ α`.
    fn canonicalize(&self, params: &mut [f64]) {
        if self.kind == CompetitorKind::Fw && params[1] > params[0] {
            params.swap(0, 1);
            params.swap(2, 3);
        }
    }
}
