use crate::error::{Error, Result};

/// Minimum number of Monte Carlo replicates for a percentile interval.
pub const MIN_REPLICATES: usize = 40;

/// Linear interpolation between order statistics: position `(n - 1)p`
/// (Hyndman–Fan type 7, the R and NumPy default). `sorted` must be ascending.
pub fn empirical_quantile(sorted: &[f64], p: f64) -> f64 {
    assert!(!sorted.is_empty(), "quantile of empty data");
    let h = (sorted.len() - 1) as f64 * p.clamp(0.0, 1.0);
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Percentile interval of replicate estimates at `level`, optionally clipped
/// to `bounds`.
pub fn percentile_ci(replicates: &[f64], level: f64, bounds: Option<(f64, f64)>) -> Result<(f64, f64)> {
    if replicates.len() < MIN_REPLICATES {
        return Err(Error::TooFewReplicates {
            got: replicates.len(),
            need: MIN_REPLICATES,
        });
    }
    let mut sorted = replicates.to_vec();
    sorted.sort_by(f64::total_cmp);
    let tail = 0.5 * (1.0 - level);
    let (mut lo, mut hi) = (empirical_quantile(&sorted, tail), empirical_quantile(&sorted, 1.0 - tail));
    if let Some((blo, bhi)) = bounds {
        lo = lo.clamp(blo, bhi);
        hi = hi.clamp(blo, bhi);
    }
    Ok((lo, hi))
}
