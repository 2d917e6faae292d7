//! Maximum-likelihood fitting.
//!
//! Any model exposing a negative log-likelihood and a parameter box can be
//! fitted through [`fit_model`]: a multi-start Nelder–Mead search in
//! transformed coordinates (log for positive parameters, logit for unit
//! interval ones), refined by projected gradient steps on the score, with
//! observed-information standard errors at the optimum.

mod ci;
mod hessian;
mod likelihood;
mod ngfisk_fit;
mod optimize;

pub use ci::{empirical_quantile, percentile_ci, MIN_REPLICATES};
pub use hessian::{numeric_hessian, observed_info_se};
pub use likelihood::{log_likelihood, score, Score};
pub use ngfisk_fit::{fit_mle, ngfisk_default_box, ridge_gap, NgFiskModel, RIDGE_TOLERANCE};
pub use optimize::{nelder_mead, projected_gradient, NmOptions, NmOutcome, PgOptions, PgOutcome};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Estimates closer than this to a bound are reported as boundary hits.
pub const BOUNDARY_TOLERANCE: f64 = 1e-6;

/// Gradient-norm threshold (transformed coordinates) for convergence.
pub const GRADIENT_TOLERANCE: f64 = 1e-5;

/// Simplex-diameter threshold (transformed coordinates) for convergence.
pub const SIMPLEX_TOLERANCE: f64 = 1e-8;

/// Restarts must beat the incumbent by at least this much to replace it.
const IMPROVEMENT_TOLERANCE: f64 = 1e-9;

/// Per-parameter lower and upper bounds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParamBox {
    names: Vec<String>,
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl ParamBox {
    pub fn new(names: Vec<String>, lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        assert_eq!(names.len(), lower.len());
        assert_eq!(names.len(), upper.len());
        for ((name, &lo), &hi) in names.iter().zip(&lower).zip(&upper) {
            if lo.partial_cmp(&hi) != Some(std::cmp::Ordering::Less) {
                return Err(Error::InvalidBox {
                    name: name.clone(),
                    lo,
                    hi,
                });
            }
        }
        Ok(ParamBox { names, lower, upper })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn bounds(&self, i: usize) -> (f64, f64) {
        (self.lower[i], self.upper[i])
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Replaces the bounds of one named parameter.
    pub fn with_bounds(mut self, name: &str, lo: f64, hi: f64) -> Result<Self> {
        let i = self.index_of(name).ok_or_else(|| Error::InvalidBox {
            name: name.to_string(),
            lo,
            hi,
        })?;
        if lo.partial_cmp(&hi) != Some(std::cmp::Ordering::Less) {
            return Err(Error::InvalidBox {
                name: name.to_string(),
                lo,
                hi,
            });
        }
        self.lower[i] = lo;
        self.upper[i] = hi;
        Ok(self)
    }

    pub fn clip(&self, i: usize, v: f64) -> f64 {
        v.clamp(self.lower[i], self.upper[i])
    }

    pub fn at_boundary(&self, i: usize, v: f64) -> bool {
        (v - self.lower[i]).abs() <= BOUNDARY_TOLERANCE || (v - self.upper[i]).abs() <= BOUNDARY_TOLERANCE
    }
}

/// Unconstrained coordinate used by the optimizer for one parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transform {
    /// `y = ln x` for `x > 0`.
    Log,
    /// `y = ln(x / (1 - x))` for `x ∈ (0, 1)`.
    Logit,
}

impl Transform {
    pub fn forward(self, x: f64) -> f64 {
        match self {
            Transform::Log => x.ln(),
            Transform::Logit => (x / (1.0 - x)).ln(),
        }
    }

    pub fn inverse(self, y: f64) -> f64 {
        match self {
            Transform::Log => y.exp(),
            Transform::Logit => 1.0 / (1.0 + (-y).exp()),
        }
    }

    /// `dx/dy` at `x`.
    pub fn jacobian(self, x: f64) -> f64 {
        match self {
            Transform::Log => x,
            Transform::Logit => x * (1.0 - x),
        }
    }
}

/// A validated, positive data sample with cached logarithms.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    values: Vec<f64>,
    logs: Vec<f64>,
}

impl Sample {
    pub fn new(values: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyData);
        }
        if let Some(&bad) = values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return Err(Error::Domain {
                op: "sample",
                value: bad,
                reason: "observations must be finite and > 0",
            });
        }
        Ok(Sample {
            values: values.to_vec(),
            logs: values.iter().map(|v| v.ln()).collect(),
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn logs(&self) -> &[f64] {
        &self.logs
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_degenerate(&self) -> bool {
        self.values.iter().all(|&v| v == self.values[0])
    }

    /// Quartiles by linear interpolation between order statistics.
    pub fn quartiles(&self) -> (f64, f64, f64) {
        let mut sorted = self.values.clone();
        sorted.sort_by(f64::total_cmp);
        (
            empirical_quantile(&sorted, 0.25),
            empirical_quantile(&sorted, 0.5),
            empirical_quantile(&sorted, 0.75),
        )
    }
}

/// A parametric model fit by [`fit_model`].
pub trait LikelihoodModel: Sync {
    fn name(&self) -> &str;

    fn param_names(&self) -> Vec<String>;

    fn default_box(&self) -> ParamBox;

    fn transforms(&self) -> Vec<Transform>;

    /// Negative log-likelihood; `+∞` where the parameters are invalid.
    fn nll(&self, params: &[f64], sample: &Sample) -> f64;

    /// Analytic gradient of the log-likelihood, if the model has one.
    fn score(&self, _params: &[f64], _sample: &Sample) -> Option<Vec<f64>> {
        None
    }

    fn initial_guess(&self, sample: &Sample, bounds: &ParamBox) -> Vec<f64>;

    /// Half-width of the restart jitter around the initial guess, in
    /// transformed coordinates.
    fn jitter_radius(&self) -> f64 {
        1.0
    }

    /// Maps an optimum to its canonical labelling when the model has symmetries.
    fn canonicalize(&self, _params: &mut [f64]) {}
}

#[derive(Debug, Clone)]
pub struct FitOptions {
    pub bounds: Option<ParamBox>,
    pub starts: usize,
    pub seed: u64,
    /// Parameters held fixed during the fit, by index.
    pub fixed: Vec<Option<f64>>,
    pub max_evals: usize,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions {
            bounds: None,
            starts: 8,
            seed: 0x5eed,
            fixed: Vec::new(),
            max_evals: 4000,
        }
    }
}

impl FitOptions {
    pub fn with_starts(mut self, starts: usize) -> Self {
        self.starts = starts;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_bounds(mut self, bounds: ParamBox) -> Self {
        self.bounds = Some(bounds);
        self
    }

    pub fn with_fixed(mut self, index: usize, value: f64) -> Self {
        if self.fixed.len() <= index {
            self.fixed.resize(index + 1, None);
        }
        self.fixed[index] = Some(value);
        self
    }
}

/// Outcome of one local search.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RestartRecord {
    pub start: Vec<f64>,
    pub estimates: Vec<f64>,
    pub nll: f64,
    pub converged: bool,
    pub gradient_norm: f64,
    pub simplex_diameter: f64,
    /// Whether this restart replaced the incumbent.
    pub accepted: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitResult {
    pub model: String,
    pub param_names: Vec<String>,
    pub estimates: Vec<f64>,
    pub std_errors: Vec<Option<f64>>,
    /// Wald intervals `estimate ± 1.96·SE`, clipped to the box.
    pub ci95: Vec<Option<(f64, f64)>>,
    pub loglik: f64,
    pub nll: f64,
    pub converged: bool,
    pub n_obs: usize,
    pub at_boundary: Vec<bool>,
    pub fixed: Vec<bool>,
    pub bounds: ParamBox,
    pub restarts: Vec<RestartRecord>,
    /// Incumbent negative log-likelihood after each restart.
    pub incumbent_trace: Vec<f64>,
    /// NG-Fisk only: `c = α(1-δ)^(-1/β)`.
    pub effective_scale: Option<f64>,
    /// NG-Fisk only: log-likelihood flat along constant `c`.
    pub ridge: Option<bool>,
}

impl FitResult {
    pub fn k(&self) -> usize {
        self.fixed.iter().filter(|f| !**f).count()
    }

    pub fn estimate(&self, name: &str) -> Option<f64> {
        self.param_names.iter().position(|n| n == name).map(|i| self.estimates[i])
    }
}

struct Problem<'a> {
    model: &'a dyn LikelihoodModel,
    sample: &'a Sample,
    bounds: &'a ParamBox,
    transforms: Vec<Transform>,
    fixed: Vec<Option<f64>>,
    free: Vec<usize>,
    lo_y: Vec<f64>,
    hi_y: Vec<f64>,
}

impl Problem<'_> {
    fn to_params(&self, y: &[f64]) -> Vec<f64> {
        let mut x: Vec<f64> = self.fixed.iter().map(|f| f.unwrap_or(f64::NAN)).collect();
        for (&i, &yi) in self.free.iter().zip(y) {
            x[i] = self.bounds.clip(i, self.transforms[i].inverse(yi));
        }
        x
    }

    fn to_free(&self, x: &[f64]) -> Vec<f64> {
        self.free
            .iter()
            .enumerate()
            .map(|(j, &i)| self.transforms[i].forward(x[i]).clamp(self.lo_y[j], self.hi_y[j]))
            .collect()
    }

    fn objective(&self, y: &[f64]) -> f64 {
        let v = self.model.nll(&self.to_params(y), self.sample);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    }

    /// Gradient of the negative log-likelihood in free transformed coordinates.
    fn gradient(&self, y: &[f64]) -> Vec<f64> {
        let x = self.to_params(y);
        if let Some(g) = self.model.score(&x, self.sample) {
            return self
                .free
                .iter()
                .map(|&i| -g[i] * self.transforms[i].jacobian(x[i]))
                .collect();
        }
        let mut yy = y.to_vec();
        (0..y.len())
            .map(|j| {
                let h = 1e-6 * y[j].abs().max(1.0);
                yy[j] = y[j] + h;
                let up = self.objective(&yy);
                yy[j] = y[j] - h;
                let down = self.objective(&yy);
                yy[j] = y[j];
                (up - down) / (2.0 * h)
            })
            .collect()
    }

    fn local_search(&self, start: &[f64], max_evals: usize) -> RestartRecord {
        let nm = nelder_mead(
            |y| self.objective(y),
            start,
            &self.lo_y,
            &self.hi_y,
            &NmOptions {
                max_evals,
                ..NmOptions::default()
            },
        );
        let pg = projected_gradient(
            |y| self.objective(y),
            |y| self.gradient(y),
            &nm.x,
            &self.lo_y,
            &self.hi_y,
            &PgOptions::default(),
        );
        let converged = pg.gradient_norm < GRADIENT_TOLERANCE || nm.diameter < SIMPLEX_TOLERANCE;
        RestartRecord {
            start: self.to_params(start),
            estimates: self.to_params(&pg.x),
            nll: pg.fx,
            converged,
            gradient_norm: pg.gradient_norm,
            simplex_diameter: nm.diameter,
            accepted: false,
        }
    }
}

/// Latin-hypercube points in `[-1, 1]^dim`.
fn latin_hypercube(points: usize, dim: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let mut out = vec![vec![0.0; dim]; points];
    for d in 0..dim {
        let mut strata: Vec<usize> = (0..points).collect();
        strata.shuffle(rng);
        for (row, s) in out.iter_mut().zip(strata) {
            let u: f64 = rng.gen();
            row[d] = 2.0 * (s as f64 + u) / points as f64 - 1.0;
        }
    }
    out
}

/// Fits `model` to `data` by multi-start maximum likelihood.
pub fn fit_model(model: &dyn LikelihoodModel, data: &[f64], opts: &FitOptions) -> Result<FitResult> {
    let sample = Sample::new(data)?;
    fit_sample(model, &sample, opts)
}

pub fn fit_sample(model: &dyn LikelihoodModel, sample: &Sample, opts: &FitOptions) -> Result<FitResult> {
    if sample.is_degenerate() {
        return Err(Error::DegenerateData("all observations are equal"));
    }
    let names = model.param_names();
    let k = names.len();
    let bounds = opts.bounds.clone().unwrap_or_else(|| model.default_box());
    if bounds.len() != k {
        return Err(Error::Arity {
            model: "parameter box",
            expected: k,
            got: bounds.len(),
        });
    }
    let mut fixed = opts.fixed.clone();
    fixed.resize(k, None);
    for (i, f) in fixed.iter().enumerate() {
        if let Some(v) = f {
            let (lo, hi) = bounds.bounds(i);
            if !(lo..=hi).contains(v) {
                return Err(Error::InvalidParameter {
                    name: "fixed",
                    value: *v,
                    reason: "fixed value outside the parameter box",
                });
            }
        }
    }
    let transforms = model.transforms();
    let free: Vec<usize> = (0..k).filter(|&i| fixed[i].is_none()).collect();
    let lo_y = free.iter().map(|&i| transforms[i].forward(bounds.lower()[i])).collect();
    let hi_y = free.iter().map(|&i| transforms[i].forward(bounds.upper()[i])).collect();
    let problem = Problem {
        model,
        sample,
        bounds: &bounds,
        transforms,
        fixed: fixed.clone(),
        free,
        lo_y,
        hi_y,
    };

    let mut guess = model.initial_guess(sample, &bounds);
    for (i, g) in guess.iter_mut().enumerate() {
        *g = fixed[i].unwrap_or_else(|| bounds.clip(i, *g));
    }
    let y0 = problem.to_free(&guess);
    let mut starts = vec![y0.clone()];
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let extra = opts.starts.max(1) - 1;
    if extra > 0 && !y0.is_empty() {
        let radius = model.jitter_radius();
        for offsets in latin_hypercube(extra, y0.len(), &mut rng) {
            starts.push(
                y0.iter()
                    .zip(&offsets)
                    .enumerate()
                    .map(|(j, (y, o))| (y + radius * o).clamp(problem.lo_y[j], problem.hi_y[j]))
                    .collect(),
            );
        }
    }

    let mut restarts: Vec<RestartRecord> = if y0.is_empty() {
        let x = problem.to_params(&y0);
        let nll = model.nll(&x, sample);
        vec![RestartRecord {
            start: x.clone(),
            estimates: x,
            nll,
            converged: true,
            gradient_norm: 0.0,
            simplex_diameter: 0.0,
            accepted: false,
        }]
    } else {
        starts.iter().map(|s| problem.local_search(s, opts.max_evals)).collect()
    };

    let mut best = 0;
    let mut incumbent_trace = Vec::with_capacity(restarts.len());
    restarts[0].accepted = restarts[0].nll.is_finite();
    for j in 0..restarts.len() {
        let incumbent = restarts[best].nll;
        let margin = IMPROVEMENT_TOLERANCE * incumbent.abs().max(1.0);
        if j > 0 && (restarts[j].nll < incumbent - margin || !incumbent.is_finite() && restarts[j].nll.is_finite()) {
            best = j;
            restarts[j].accepted = true;
        }
        incumbent_trace.push(restarts[best].nll);
    }
    let chosen = &restarts[best];
    if !chosen.nll.is_finite() {
        return Err(Error::DegenerateData("likelihood is not finite anywhere searched"));
    }

    let mut estimates = chosen.estimates.clone();
    model.canonicalize(&mut estimates);
    let nll = model.nll(&estimates, sample);
    let is_fixed: Vec<bool> = fixed.iter().map(Option::is_some).collect();
    let free_idx: Vec<usize> = (0..k).filter(|&i| !is_fixed[i]).collect();
    let se_free = observed_info_se(
        |z: &[f64]| {
            let mut x = estimates.clone();
            for (&i, &v) in free_idx.iter().zip(z) {
                x[i] = v;
            }
            model.nll(&x, sample)
        },
        &free_idx.iter().map(|&i| estimates[i]).collect::<Vec<_>>(),
    );
    let mut std_errors = vec![None; k];
    for (&i, se) in free_idx.iter().zip(se_free) {
        std_errors[i] = se;
    }
    let ci95 = std_errors
        .iter()
        .enumerate()
        .map(|(i, se)| {
            se.map(|s| {
                let e = estimates[i];
                (bounds.clip(i, e - 1.959_963_984_540_054 * s), bounds.clip(i, e + 1.959_963_984_540_054 * s))
            })
        })
        .collect();
    let at_boundary = (0..k).map(|i| !is_fixed[i] && bounds.at_boundary(i, estimates[i])).collect();

    Ok(FitResult {
        model: model.name().to_string(),
        param_names: names,
        estimates,
        std_errors,
        ci95,
        loglik: -nll,
        nll,
        converged: chosen.converged,
        n_obs: sample.len(),
        at_boundary,
        fixed: is_fixed,
        bounds,
        restarts,
        incumbent_trace,
        effective_scale: None,
        ridge: None,
    })
}
