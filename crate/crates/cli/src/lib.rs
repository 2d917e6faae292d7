//! Command-line front end: argument parsing, dispatch and rendering.

mod render;
#[cfg(test)]
mod command_tests;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use ngfisk::competitors::{Competitor, CompetitorKind, CompetitorModel};
use ngfisk::dataset::{describe, ingest, Dataset, BUILTIN_FT};
use ngfisk::estimation::{fit_mle, fit_model, ngfisk_default_box, FitOptions, FitResult, ParamBox};
use ngfisk::selection::{cramer_von_mises, rank_models, ModelScore};
use ngfisk::simstudy::{run_case, SimCase, DEFAULT_REPLICATIONS};
use ngfisk::{Error, LifetimeDistribution, NgFiskParams};

pub use render::{csv_record, format_sig};

#[derive(Debug, Parser)]
#[command(name = "ngfisk", version, about = "NG-Fisk lifetime distribution toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format; commands pick their own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Significant digits in CSV and plain output.
    #[arg(long, global = true, default_value_t = 6)]
    pub precision: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Six-number summary of a dataset.
    Describe(DataArgs),
    /// Maximum-likelihood fit of one model.
    Fit(FitArgs),
    /// Fit several models and rank them by information criteria.
    Compare(CompareArgs),
    /// Monte Carlo study of the NG-Fisk estimators.
    Simulate(SimulateArgs),
    /// Density, distribution, survival and hazard on a grid.
    Curves(CurvesArgs),
    /// Draw an NG-Fisk sample by inverse transform.
    Sample(SampleArgs),
}

#[derive(Debug, Args)]
pub struct DataArgs {
    /// File of positive values or `builtin:dataFT`.
    #[arg(long, default_value = BUILTIN_FT)]
    pub data: String,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[arg(long, default_value = BUILTIN_FT)]
    pub data: String,

    #[arg(long, default_value = "ngfisk")]
    pub model: String,

    #[arg(long, default_value_t = FitOptions::default().seed)]
    pub seed: u64,

    #[arg(long, default_value_t = FitOptions::default().starts)]
    pub starts: usize,

    /// Override a parameter range, `NAME=LO:HI`.
    #[arg(long = "box", value_name = "NAME=LO:HI")]
    pub boxes: Vec<String>,

    /// Hold a parameter fixed, `NAME=VALUE`.
    #[arg(long = "fix", value_name = "NAME=VALUE")]
    pub fixed: Vec<String>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long, default_value = BUILTIN_FT)]
    pub data: String,

    /// Models to fit; all six when omitted.
    #[arg(long, value_delimiter = ',')]
    pub models: Vec<String>,

    #[arg(long, default_value_t = FitOptions::default().seed)]
    pub seed: u64,

    #[arg(long, default_value_t = FitOptions::default().starts)]
    pub starts: usize,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Published parameter setting 1, 2 or 3.
    #[arg(long, default_value_t = 1)]
    pub case: u8,

    /// True `alpha,beta,theta,delta`; overrides the case.
    #[arg(long, alias = "params", value_delimiter = ',')]
    pub truth: Vec<f64>,

    /// Sample sizes, ascending.
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<usize>,

    #[arg(long, default_value_t = DEFAULT_REPLICATIONS)]
    pub reps: usize,

    #[arg(long)]
    pub seed: Option<u64>,

    #[arg(long)]
    pub starts: Option<usize>,

    #[arg(long = "box", value_name = "NAME=LO:HI")]
    pub boxes: Vec<String>,
}

#[derive(Debug, Args)]
pub struct CurvesArgs {
    #[arg(long, default_value = "ngfisk")]
    pub model: String,

    /// Model parameters in the model's order.
    #[arg(long, alias = "params", value_delimiter = ',', required = true)]
    pub truth: Vec<f64>,

    /// Comma list of points or `LO:HI:COUNT`.
    #[arg(long, default_value = "0:10:101")]
    pub grid: String,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    /// `alpha,beta,theta,delta`.
    #[arg(long, alias = "params", value_delimiter = ',', required = true)]
    pub truth: Vec<f64>,

    #[arg(long)]
    pub n: usize,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// A failure rendered as a record rather than a panic.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorRecord {
    pub kind: String,
    pub message: String,
}

impl From<Error> for ErrorRecord {
    fn from(e: Error) -> Self {
        ErrorRecord {
            kind: e.kind().to_string(),
            message: e.to_string(),
        }
    }
}

impl ErrorRecord {
    fn usage(message: impl Into<String>) -> Self {
        ErrorRecord {
            kind: "usage".into(),
            message: message.into(),
        }
    }
}

/// Text destined for stdout and stderr, and the exit status.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Model selector accepted by `fit`, `compare` and `curves`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelName {
    NgFisk,
    Competitor(CompetitorKind),
}

impl ModelName {
    pub fn parse(name: &str) -> Result<Self, ErrorRecord> {
        let key: String = name
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .map(|c| c.to_ascii_lowercase())
            .collect();
        if matches!(key.as_str(), "ngfisk" | "ngf") {
            return Ok(ModelName::NgFisk);
        }
        CompetitorKind::parse(name).map(ModelName::Competitor).map_err(ErrorRecord::from)
    }

    pub fn label(self) -> &'static str {
        match self {
            ModelName::NgFisk => "NG-F",
            ModelName::Competitor(k) => k.label(),
        }
    }

    fn default_box(self) -> ParamBox {
        match self {
            ModelName::NgFisk => ngfisk_default_box(),
            ModelName::Competitor(k) => k.default_box(),
        }
    }

    fn fit(self, data: &[f64], opts: &FitOptions) -> Result<FitResult, Error> {
        match self {
            ModelName::NgFisk => fit_mle(data, opts),
            ModelName::Competitor(k) => fit_model(&CompetitorModel::new(k), data, opts),
        }
    }

    fn distribution(self, params: &[f64]) -> Result<Box<dyn LifetimeDistribution<f64>>, Error> {
        Ok(match self {
            ModelName::NgFisk => Box::new(NgFiskParams::from_slice(params)?),
            ModelName::Competitor(k) => Box::new(Competitor::new(k, params)?),
        })
    }
}

pub const ALL_MODELS: [&str; 6] = ["NG-F", "Ku-W", "Z-W", "KWP", "FW", "NEx-FW"];

fn split_pair<'a>(spec: &'a str, what: &str) -> Result<(&'a str, &'a str), ErrorRecord> {
    spec.split_once('=')
        .ok_or_else(|| ErrorRecord::usage(format!("expected {what}, got {spec:?}")))
}

fn parse_number(token: &str, context: &str) -> Result<f64, ErrorRecord> {
    token
        .trim()
        .parse::<f64>()
        .map_err(|_| ErrorRecord::usage(format!("{context}: {token:?} is not a number")))
}

/// Applies `NAME=LO:HI` overrides.
pub fn apply_boxes(mut bounds: ParamBox, specs: &[String]) -> Result<ParamBox, ErrorRecord> {
    for spec in specs {
        let (name, range) = split_pair(spec, "NAME=LO:HI")?;
        let (lo, hi) = range
            .split_once(':')
            .ok_or_else(|| ErrorRecord::usage(format!("expected NAME=LO:HI, got {spec:?}")))?;
        bounds = bounds.with_bounds(name, parse_number(lo, spec)?, parse_number(hi, spec)?)?;
    }
    Ok(bounds)
}

/// Parses a grid given as a comma list or `LO:HI:COUNT`.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>, ErrorRecord> {
    let grid: Vec<f64> = if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(ErrorRecord::usage(format!("expected LO:HI:COUNT, got {spec:?}")));
        }
        let (lo, hi) = (parse_number(parts[0], "grid")?, parse_number(parts[1], "grid")?);
        let count: usize = parts[2]
            .trim()
            .parse()
            .map_err(|_| ErrorRecord::usage(format!("grid count {:?} is not an integer", parts[2])))?;
        match count {
            0 => Vec::new(),
            1 => vec![lo],
            _ => (0..count).map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64).collect(),
        }
    } else {
        spec.split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| parse_number(t, "grid"))
            .collect::<Result<_, _>>()?
    };
    if grid.is_empty() {
        return Err(ErrorRecord::usage("grid is empty"));
    }
    if grid.iter().any(|x| !x.is_finite() || *x < 0.0) || grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(ErrorRecord::usage("grid must be nonnegative and strictly ascending"));
    }
    Ok(grid)
}

fn load(data: &str) -> Result<Dataset, ErrorRecord> {
    ingest(data).map_err(ErrorRecord::from)
}

fn dataset_json(d: &Dataset) -> Value {
    json!({ "source": d.source, "n": d.n() })
}

fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn cmd_describe(args: &DataArgs, format: Format, digits: usize) -> Result<String, ErrorRecord> {
    let d = load(&args.data)?;
    let s = describe(&d.values)?;
    Ok(match format {
        Format::Json => to_json(&json!({ "Dataset": dataset_json(&d), "Summary": s })),
        Format::Csv => {
            let mut out = csv_record(&["n", "min", "q1", "median", "mean", "q3", "max"]);
            let mut row = vec![d.n().to_string()];
            row.extend([s.min, s.q1, s.median, s.mean, s.q3, s.max].iter().map(|v| format_sig(*v, digits)));
            out += &csv_record(&row);
            out
        }
    })
}

fn fit_options(model: ModelName, seed: u64, starts: usize, boxes: &[String], fixed: &[String]) -> Result<FitOptions, ErrorRecord> {
    let bounds = apply_boxes(model.default_box(), boxes)?;
    let mut opts = FitOptions::default().with_seed(seed).with_starts(starts.max(1));
    for spec in fixed {
        let (name, value) = split_pair(spec, "NAME=VALUE")?;
        let i = bounds
            .index_of(name)
            .ok_or_else(|| ErrorRecord::usage(format!("{} has no parameter {name:?}", model.label())))?;
        opts = opts.with_fixed(i, parse_number(value, spec)?);
    }
    Ok(opts.with_bounds(bounds))
}

fn fit_csv(fit: &FitResult, digits: usize) -> String {
    let num = |v: f64| format_sig(v, digits);
    let opt = |v: Option<f64>| v.map(num).unwrap_or_default();
    let mut out = csv_record(&[
        "model", "parameter", "estimate", "std_error", "ci95_lo", "ci95_hi", "at_boundary", "fixed", "nll", "loglik",
        "converged", "ridge", "effective_scale",
    ]);
    for (i, name) in fit.param_names.iter().enumerate() {
        out += &csv_record(&[
            fit.model.clone(),
            name.clone(),
            num(fit.estimates[i]),
            opt(fit.std_errors[i]),
            opt(fit.ci95[i].map(|c| c.0)),
            opt(fit.ci95[i].map(|c| c.1)),
            fit.at_boundary[i].to_string(),
            fit.fixed[i].to_string(),
            num(fit.nll),
            num(fit.loglik),
            fit.converged.to_string(),
            fit.ridge.map(|r| r.to_string()).unwrap_or_default(),
            opt(fit.effective_scale),
        ]);
    }
    out
}

fn cmd_fit(args: &FitArgs, format: Format, digits: usize) -> Result<String, ErrorRecord> {
    let model = ModelName::parse(&args.model)?;
    let opts = fit_options(model, args.seed, args.starts, &args.boxes, &args.fixed)?;
    let d = load(&args.data)?;
    let fit = model.fit(&d.values, &opts)?;
    Ok(match format {
        Format::Json => to_json(&json!({ "Dataset": dataset_json(&d), "FitResult": fit })),
        Format::Csv => fit_csv(&fit, digits),
    })
}

/// Fits `model` and scores it on `data`.
pub fn score_model(model: ModelName, data: &[f64], opts: &FitOptions) -> Result<(FitResult, ModelScore), Error> {
    let fit = model.fit(data, opts)?;
    let dist = model.distribution(&fit.estimates)?;
    let cm = cramer_von_mises(data, |x| dist.cdf(x).unwrap_or(f64::NAN))?;
    let score = ModelScore::new(model.label(), fit.k(), data.len(), fit.nll, cm)?;
    Ok((fit, score))
}

#[derive(Debug, Serialize)]
struct RankedScore {
    rank: usize,
    #[serde(flatten)]
    score: ModelScore,
}

#[derive(Debug, Serialize)]
struct ModelFailure {
    model: String,
    #[serde(flatten)]
    error: ErrorRecord,
}

fn cmd_compare(args: &CompareArgs, format: Format, digits: usize) -> Result<(String, bool), ErrorRecord> {
    let names: Vec<String> = if args.models.is_empty() {
        ALL_MODELS.iter().map(|s| s.to_string()).collect()
    } else {
        args.models.clone()
    };
    let models: Vec<ModelName> = names.iter().map(|n| ModelName::parse(n)).collect::<Result<_, _>>()?;
    let d = load(&args.data)?;
    let mut fits = Vec::new();
    let mut scores = Vec::new();
    let mut failures = Vec::new();
    for m in models {
        let opts = FitOptions::default()
            .with_seed(args.seed)
            .with_starts(args.starts.max(1))
            .with_bounds(m.default_box());
        match score_model(m, &d.values, &opts) {
            Ok((fit, score)) => {
                fits.push(fit);
                scores.push(score);
            }
            Err(e) => failures.push(ModelFailure {
                model: m.label().to_string(),
                error: e.into(),
            }),
        }
    }
    let ranked: Vec<RankedScore> = rank_models(&scores)
        .into_iter()
        .enumerate()
        .map(|(i, score)| RankedScore { rank: i + 1, score })
        .collect();
    let ok = failures.is_empty();
    let text = match format {
        Format::Json => to_json(&json!({
            "Dataset": dataset_json(&d),
            "ModelScore": ranked,
            "FitResult": fits,
            "errors": failures,
        })),
        Format::Csv => {
            let num = |v: f64| format_sig(v, digits);
            let mut out = csv_record(&["rank", "name", "k", "n", "nll", "aic", "bic", "caic", "hqic", "cm", "error"]);
            for r in &ranked {
                let s = &r.score;
                out += &csv_record(&[
                    r.rank.to_string(),
                    s.name.clone(),
                    s.k.to_string(),
                    s.n.to_string(),
                    num(s.nll),
                    num(s.aic),
                    num(s.bic),
                    num(s.caic),
                    num(s.hqic),
                    num(s.cm),
                    String::new(),
                ]);
            }
            for f in &failures {
                let mut row = vec![String::new(), f.model.clone()];
                row.extend(std::iter::repeat_n(String::new(), 8));
                row.push(f.error.message.clone());
                out += &csv_record(&row);
            }
            out
        }
    };
    Ok((text, ok))
}

fn cmd_simulate(args: &SimulateArgs, format: Format, digits: usize) -> Result<String, ErrorRecord> {
    let mut case = SimCase::preset(args.case)?;
    if !args.truth.is_empty() {
        case.truth = NgFiskParams::from_slice(&args.truth)?;
    }
    if !args.n.is_empty() {
        case = case.with_sizes(args.n.clone())?;
    }
    case = case.with_replications(args.reps)?;
    if let Some(seed) = args.seed {
        case = case.with_seed(seed);
    }
    if let Some(starts) = args.starts {
        case = case.with_starts(starts);
    }
    case = case.with_bounds(apply_boxes(ngfisk_default_box(), &args.boxes)?);
    let summary = run_case(&case)?;
    Ok(match format {
        Format::Json => to_json(&json!({ "SimCase": case, "SimSummary": summary })),
        Format::Csv => {
            let num = |v: f64| format_sig(v, digits);
            let mut out = csv_record(&[
                "n", "parameter", "truth", "mle", "mse", "bias", "ci95_lo", "ci95_hi", "variance", "converged",
                "replications",
            ]);
            for size in &summary.sizes {
                for p in &size.params {
                    out += &csv_record(&[
                        size.n.to_string(),
                        p.parameter.clone(),
                        num(p.truth),
                        num(p.mle_mean),
                        num(p.mse),
                        num(p.bias),
                        num(p.ci95.0),
                        num(p.ci95.1),
                        num(p.variance),
                        size.converged.to_string(),
                        size.replications.to_string(),
                    ]);
                }
            }
            out
        }
    })
}

/// One evaluated grid point; `None` cells failed and are named in `flag`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveRow {
    pub x: f64,
    pub pdf: Option<f64>,
    pub cdf: Option<f64>,
    pub survival: Option<f64>,
    pub hazard: Option<f64>,
    pub flag: String,
}

/// Evaluates a distribution on `grid`.
pub fn curve_rows(dist: &dyn LifetimeDistribution<f64>, grid: &[f64]) -> Vec<CurveRow> {
    grid.iter()
        .map(|&x| {
            let mut flags = Vec::new();
            let mut cell = |name: &str, v: Result<f64, Error>| match v {
                Ok(v) if v.is_finite() => Some(v),
                Ok(v) => {
                    flags.push(format!("{name}:{}", if v.is_nan() { "nan" } else { "infinite" }));
                    None
                }
                Err(e) => {
                    flags.push(format!("{name}:{}", e.kind()));
                    None
                }
            };
            let pdf = cell("pdf", dist.pdf(x));
            let cdf = cell("cdf", dist.cdf(x));
            let survival = cell("survival", dist.sf(x));
            let hazard = cell("hazard", dist.hazard(x));
            CurveRow {
                x,
                pdf,
                cdf,
                survival,
                hazard,
                flag: flags.join(";"),
            }
        })
        .collect()
}

fn cmd_curves(args: &CurvesArgs, format: Format, digits: usize) -> Result<String, ErrorRecord> {
    let model = ModelName::parse(&args.model)?;
    let dist = model.distribution(&args.truth)?;
    let grid = parse_grid(&args.grid)?;
    let rows = curve_rows(dist.as_ref(), &grid);
    Ok(match format {
        Format::Json => to_json(&json!({ "model": model.label(), "params": args.truth, "CurveRow": rows })),
        Format::Csv => {
            let opt = |v: Option<f64>| v.map(|v| format_sig(v, digits)).unwrap_or_default();
            let mut out = csv_record(&["x", "pdf", "cdf", "survival", "hazard", "flag"]);
            for r in &rows {
                out += &csv_record(&[
                    format_sig(r.x, digits),
                    opt(r.pdf),
                    opt(r.cdf),
                    opt(r.survival),
                    opt(r.hazard),
                    r.flag.clone(),
                ]);
            }
            out
        }
    })
}

fn cmd_sample(args: &SampleArgs, format: Format, digits: usize) -> Result<String, ErrorRecord> {
    let p = NgFiskParams::from_slice(&args.truth)?;
    let values = p.sample(args.n, args.seed);
    Ok(match format {
        Format::Json => to_json(&json!({ "NgFiskParams": p, "seed": args.seed, "values": values })),
        Format::Csv => values.iter().map(|v| format_sig(*v, digits) + "\n").collect(),
    })
}

fn render_error(err: &ErrorRecord, format: Format) -> String {
    match format {
        Format::Json => to_json(&json!({ "Error": err })),
        Format::Csv => csv_record(&["error", "message"]) + &csv_record(&[err.kind.clone(), err.message.clone()]),
    }
}

/// Runs a parsed command line.
pub fn execute(cli: &Cli) -> Output {
    let digits = cli.precision.clamp(1, 17);
    let format = cli.format.unwrap_or(match cli.command {
        Command::Curves(_) | Command::Sample(_) => Format::Csv,
        _ => Format::Json,
    });
    let result = match &cli.command {
        Command::Describe(a) => cmd_describe(a, format, digits).map(|s| (s, true)),
        Command::Fit(a) => cmd_fit(a, format, digits).map(|s| (s, true)),
        Command::Compare(a) => cmd_compare(a, format, digits),
        Command::Simulate(a) => cmd_simulate(a, format, digits).map(|s| (s, true)),
        Command::Curves(a) => cmd_curves(a, format, digits).map(|s| (s, true)),
        Command::Sample(a) => cmd_sample(a, format, digits).map(|s| (s, true)),
    };
    match result {
        Ok((stdout, ok)) => Output {
            stdout,
            stderr: String::new(),
            code: if ok { 0 } else { 1 },
        },
        Err(err) => Output {
            stdout: String::new(),
            stderr: render_error(&err, format),
            code: 1,
        },
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Output {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            } else {
                Output {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            }
        }
    }
}
