//! Monte Carlo study of maximum-likelihood estimator quality.
//!
//! Each replicate draws a sample by inverse transform, fits NG-Fisk, and
//! records `(α̂, β̂, θ̂, δ̂, ĉ)`. Replicate `r` at size index `j` uses a ChaCha8
//! generator keyed by the case seed on stream `(j << 32) | r`, so results do
//! not depend on thread scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::estimation::{fit_sample, ngfisk_default_box, percentile_ci, FitOptions, NgFiskModel, ParamBox, Sample, MIN_REPLICATES};
use crate::ngfisk::NgFiskParams;

/// Sample sizes of the published study.
pub const PAPER_SIZES: [usize; 6] = [25, 50, 100, 150, 250, 500];

/// Replications used when none are requested.
pub const DEFAULT_REPLICATIONS: usize = 200;

/// Columns summarised per sample size.
pub const COLUMNS: [&str; 5] = ["alpha", "beta", "theta", "delta", "c"];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimCase {
    pub truth: NgFiskParams<f64>,
    pub sample_sizes: Vec<usize>,
    pub replications: usize,
    pub seed: u64,
    pub bounds: ParamBox,
    /// Optimizer starts per replicate fit.
    pub starts: usize,
}

impl SimCase {
    pub fn new(truth: NgFiskParams<f64>, sample_sizes: Vec<usize>, replications: usize, seed: u64) -> Result<Self> {
        if replications < MIN_REPLICATES {
            return Err(Error::TooFewReplicates {
                got: replications,
                need: MIN_REPLICATES,
            });
        }
        if sample_sizes.is_empty() {
            return Err(Error::EmptyData);
        }
        if sample_sizes[0] == 0 || sample_sizes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter {
                name: "sample_sizes",
                value: sample_sizes[0] as f64,
                reason: "sample sizes must be positive and strictly ascending",
            });
        }
        Ok(SimCase {
            truth,
            sample_sizes,
            replications,
            seed,
            bounds: ngfisk_default_box(),
            starts: FitOptions::default().starts,
        })
    }

    /// One of the three published parameter settings (1, 2 or 3).
    pub fn preset(case: u8) -> Result<Self> {
        let (a, b, t, d) = match case {
            1 => (1.5, 2.0, 2.5, 0.25),
            2 => (1.0, 3.0, 2.5, 0.5),
            3 => (1.5, 3.5, 2.0, 0.75),
            other => {
                return Err(Error::InvalidParameter {
                    name: "case",
                    value: other as f64,
                    reason: "known cases are 1, 2 and 3",
                })
            }
        };
        SimCase::new(NgFiskParams::new(a, b, t, d)?, PAPER_SIZES.to_vec(), DEFAULT_REPLICATIONS, 2024)
    }

    pub fn with_sizes(mut self, sizes: Vec<usize>) -> Result<Self> {
        let checked = SimCase::new(self.truth, sizes, self.replications, self.seed)?;
        self.sample_sizes = checked.sample_sizes;
        Ok(self)
    }

    pub fn with_replications(mut self, replications: usize) -> Result<Self> {
        SimCase::new(self.truth, self.sample_sizes.clone(), replications, self.seed)?;
        self.replications = replications;
        Ok(self)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_starts(mut self, starts: usize) -> Self {
        self.starts = starts.max(1);
        self
    }

    pub fn with_bounds(mut self, bounds: ParamBox) -> Self {
        self.bounds = bounds;
        self
    }

    fn truth_row(&self) -> [f64; 5] {
        let [a, b, t, d] = self.truth.to_array();
        [a, b, t, d, self.truth.effective_scale()]
    }

    fn column_bounds(&self) -> [Option<(f64, f64)>; 5] {
        let b = |i| Some(self.bounds.bounds(i));
        [b(0), b(1), b(2), b(3), None]
    }
}

/// Mean, population variance, bias and MSE of one column.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ColumnStats {
    pub mean: f64,
    pub variance: f64,
    pub bias: f64,
    pub mse: f64,
}

/// `variance` divides by the number of replicates; `mse = variance + bias²`.
pub fn column_stats(values: &[f64], truth: f64) -> Result<ColumnStats> {
    if values.is_empty() {
        return Err(Error::EmptyData);
    }
    let r = values.len() as f64;
    let mean = values.iter().sum::<f64>() / r;
    let variance = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / r;
    let bias = mean - truth;
    Ok(ColumnStats {
        mean,
        variance,
        bias,
        mse: variance + bias * bias,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParamSummary {
    pub parameter: String,
    pub truth: f64,
    pub mle_mean: f64,
    pub variance: f64,
    pub bias: f64,
    pub mse: f64,
    pub ci95: (f64, f64),
}

/// Column-wise summaries of a replicate matrix (one row per replicate).
pub fn aggregate(
    rows: &[Vec<f64>],
    names: &[&str],
    truth: &[f64],
    bounds: &[Option<(f64, f64)>],
) -> Result<Vec<ParamSummary>> {
    if rows.len() < MIN_REPLICATES {
        return Err(Error::TooFewReplicates {
            got: rows.len(),
            need: MIN_REPLICATES,
        });
    }
    let k = names.len();
    if truth.len() != k || bounds.len() != k {
        return Err(Error::Arity {
            model: "replicate matrix",
            expected: k,
            got: truth.len().min(bounds.len()),
        });
    }
    if let Some(bad) = rows.iter().find(|r| r.len() != k) {
        return Err(Error::Arity {
            model: "replicate matrix",
            expected: k,
            got: bad.len(),
        });
    }
    (0..k)
        .map(|j| {
            let col: Vec<f64> = rows.iter().map(|r| r[j]).collect();
            let s = column_stats(&col, truth[j])?;
            Ok(ParamSummary {
                parameter: names[j].to_string(),
                truth: truth[j],
                mle_mean: s.mean,
                variance: s.variance,
                bias: s.bias,
                mse: s.mse,
                ci95: percentile_ci(&col, 0.95, bounds[j])?,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SizeSummary {
    pub n: usize,
    pub replications: usize,
    pub converged: usize,
    pub excluded: usize,
    pub convergence_rate: f64,
    pub params: Vec<ParamSummary>,
}

impl SizeSummary {
    pub fn param(&self, name: &str) -> Option<&ParamSummary> {
        self.params.iter().find(|p| p.parameter == name)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimSummary {
    pub truth: [f64; 4],
    pub seed: u64,
    pub sizes: Vec<SizeSummary>,
}

impl SimSummary {
    pub fn at(&self, n: usize) -> Option<&SizeSummary> {
        self.sizes.iter().find(|s| s.n == n)
    }
}

/// Generator for replicate `rep` at size index `size_index`.
pub fn replicate_rng(seed: u64, size_index: usize, rep: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((size_index as u64) << 32) | rep as u64);
    rng
}

struct Replicate {
    row: Vec<f64>,
    converged: bool,
}

fn run_replicate(case: &SimCase, size_index: usize, rep: usize) -> Replicate {
    let n = case.sample_sizes[size_index];
    let mut rng = replicate_rng(case.seed, size_index, rep);
    let data = case.truth.sample_with(&mut rng, n);
    let opts = FitOptions::default()
        .with_bounds(case.bounds.clone())
        .with_starts(case.starts)
        .with_seed(case.seed ^ ((size_index as u64) << 32 | rep as u64));
    let fit = Sample::new(&data).and_then(|s| fit_sample(&NgFiskModel, &s, &opts));
    match fit {
        Ok(fit) => {
            let e = &fit.estimates;
            let c = e[0] * (1.0 - e[3]).powf(-1.0 / e[1]);
            Replicate {
                row: vec![e[0], e[1], e[2], e[3], c],
                converged: fit.converged && e.iter().all(|v| v.is_finite()),
            }
        }
        Err(_) => Replicate {
            row: Vec::new(),
            converged: false,
        },
    }
}

/// Runs every sample size of `case`. Non-converged replicates are excluded
/// from the summaries and counted.
pub fn run_case(case: &SimCase) -> Result<SimSummary> {
    let truth = case.truth_row();
    let bounds = case.column_bounds();
    let mut sizes = Vec::with_capacity(case.sample_sizes.len());
    for (j, &n) in case.sample_sizes.iter().enumerate() {
        let reps: Vec<Replicate> = (0..case.replications)
            .into_par_iter()
            .map(|r| run_replicate(case, j, r))
            .collect();
        let rows: Vec<Vec<f64>> = reps.into_iter().filter(|r| r.converged).map(|r| r.row).collect();
        if rows.is_empty() {
            return Err(Error::NoConvergedReplicates(n));
        }
        let converged = rows.len();
        sizes.push(SizeSummary {
            n,
            replications: case.replications,
            converged,
            excluded: case.replications - converged,
            convergence_rate: converged as f64 / case.replications as f64,
            params: aggregate(&rows, &COLUMNS, &truth, &bounds)?,
        });
    }
    Ok(SimSummary {
        truth: case.truth.to_array(),
        seed: case.seed,
        sizes,
    })
}
