//! Data ingestion and descriptive summaries.

use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::estimation::empirical_quantile;

/// Token naming the embedded failure-times data.
pub const BUILTIN_FT: &str = "builtin:dataFT";

/// Failure times in hours for 101 units, in their published order.
pub const DATA_FT: [f64; 101] = [
    4.69, 0.01, 1.51, 0.02, 7.89, 0.03, 1.11, 0.04, 0.05, 0.06,
    0.07, 0.07, 0.08, 0.09, 0.09, 0.10, 0.10, 0.11, 0.11, 0.12,
    0.13, 0.18, 0.19, 0.20, 0.23, 0.24, 0.24, 0.29, 0.34, 0.35,
    0.36, 0.38, 0.40, 0.42, 0.43, 0.52, 0.54, 0.56, 0.60, 0.60,
    0.63, 0.65, 0.67, 0.68, 0.72, 0.72, 0.72, 0.73, 0.79, 0.79,
    0.80, 0.80, 0.83, 0.85, 0.90, 0.92, 0.95, 0.99, 1.00, 1.01,
    1.02, 1.03, 1.05, 1.10, 1.10, 0.03, 1.15, 1.18, 1.20, 1.29,
    1.31, 1.33, 1.34, 1.40, 1.43, 1.45, 1.50, 0.02, 1.52, 1.53,
    1.54, 1.54, 1.55, 1.58, 1.60, 1.63, 1.64, 1.80, 1.80, 1.81,
    2.02, 2.05, 2.14, 2.17, 2.33, 3.03, 3.03, 3.34, 4.20, 0.01,
    0.02,
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Dataset {
    pub values: Vec<f64>,
    pub source: String,
}

impl Dataset {
    pub fn new(values: Vec<f64>, source: impl Into<String>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyData);
        }
        if let Some(bad) = values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return Err(Error::Domain {
                op: "dataset",
                value: *bad,
                reason: "values must be finite and > 0",
            });
        }
        Ok(Dataset {
            values,
            source: source.into(),
        })
    }

    pub fn builtin_ft() -> Self {
        Dataset {
            values: DATA_FT.to_vec(),
            source: BUILTIN_FT.to_string(),
        }
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }
}

/// Parses whitespace, comma or newline separated positive reals.
pub fn parse_values(text: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        for token in line.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            let parse_err = |reason: &'static str| Error::Parse {
                line: idx + 1,
                token: token.to_string(),
                reason,
            };
            let v: f64 = token.parse().map_err(|_| parse_err("not a number"))?;
            if !v.is_finite() {
                return Err(parse_err("not finite"));
            }
            if v <= 0.0 {
                return Err(parse_err("values must be > 0"));
            }
            out.push(v);
        }
    }
    if out.is_empty() {
        return Err(Error::EmptyData);
    }
    Ok(out)
}

/// Loads `builtin:dataFT` or a file path.
pub fn ingest(source: &str) -> Result<Dataset> {
    if source == BUILTIN_FT {
        return Ok(Dataset::builtin_ft());
    }
    let text = std::fs::read_to_string(Path::new(source)).map_err(|e| Error::Io {
        path: source.to_string(),
        message: e.to_string(),
    })?;
    Dataset::new(parse_values(&text)?, source)
}

/// Six-number summary; quartiles interpolate linearly between order statistics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Summary {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub mean: f64,
    pub q3: f64,
    pub max: f64,
}

pub fn describe(values: &[f64]) -> Result<Summary> {
    if values.is_empty() {
        return Err(Error::EmptyData);
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    Ok(Summary {
        min: sorted[0],
        q1: empirical_quantile(&sorted, 0.25),
        median: empirical_quantile(&sorted, 0.5),
        mean: sorted.iter().sum::<f64>() / sorted.len() as f64,
        q3: empirical_quantile(&sorted, 0.75),
        max: sorted[sorted.len() - 1],
    })
}
