use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("argument {value} outside the domain of {op}: {reason}")]
    Domain {
        op: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("{op} overflowed at x = {value}")]
    Overflow { op: &'static str, value: f64 },

    #[error("empty data")]
    EmptyData,

    #[error("degenerate data: {0}")]
    DegenerateData(&'static str),

    #[error("need at least {need} replicates, got {got}")]
    TooFewReplicates { got: usize, need: usize },

    #[error("sample size n = {n} too small for k = {k} parameters (need n > k + 1)")]
    SampleTooSmall { n: usize, k: usize },

    #[error("parameter vector has length {got}, model {model} expects {expected}")]
    Arity {
        model: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("invalid box for {name}: lower {lo} must be below upper {hi}")]
    InvalidBox { name: String, lo: f64, hi: f64 },

    #[error("unknown model {0:?}")]
    UnknownModel(String),

    #[error("line {line}: cannot use token {token:?}: {reason}")]
    Parse {
        line: usize,
        token: String,
        reason: &'static str,
    },

    #[error("io error on {path}: {message}")]
    Io { path: String, message: String },

    #[error("no replicate converged for n = {0}")]
    NoConvergedReplicates(usize),
}

impl Error {
    /// Stable identifier of the variant, for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidParameter { .. } => "invalid_parameter",
            Error::Domain { .. } => "domain",
            Error::Overflow { .. } => "overflow",
            Error::EmptyData => "empty_data",
            Error::DegenerateData(_) => "degenerate_data",
            Error::TooFewReplicates { .. } => "too_few_replicates",
            Error::SampleTooSmall { .. } => "sample_too_small",
            Error::Arity { .. } => "arity",
            Error::InvalidBox { .. } => "invalid_box",
            Error::UnknownModel(_) => "unknown_model",
            Error::Parse { .. } => "parse",
            Error::Io { .. } => "io",
            Error::NoConvergedReplicates(_) => "no_converged_replicates",
        }
    }
}
