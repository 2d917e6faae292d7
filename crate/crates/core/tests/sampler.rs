use ngfisk::NgFisk64;

/// Two-sided Kolmogorov–Smirnov distance of `sample` from `cdf`.
fn ks_distance(sample: &mut [f64], cdf: impl Fn(f64) -> f64) -> f64 {
    sample.sort_by(f64::total_cmp);
    let n = sample.len() as f64;
    sample
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).max((i + 1) as f64 / n - f)
        })
        .fold(0.0, f64::max)
}

#[test]
fn kolmogorov_smirnov_over_seeds() {
    let p = NgFisk64::new(1.5, 2.0, 2.5, 0.25).unwrap();
    let n = 100_000;
    let critical = 1.358 / (n as f64).sqrt();
    let passes = (0..20)
        .filter(|&seed| {
            let mut s = p.sample(n, seed);
            ks_distance(&mut s, |x| p.cdf(x).unwrap()) < critical
        })
        .count();
    assert!(passes >= 18, "{passes}/20 seeds within the 95% band");
}

#[test]
fn sample_median() {
    let p = NgFisk64::new(1.5, 2.0, 2.5, 0.25).unwrap();
    let s = p.sample(100_000, 11);
    let below = s.iter().filter(|&&x| x < 0.979).count() as f64 / s.len() as f64;
    assert!((below - 0.5).abs() < 0.01, "{below}");
    let mut sorted = s.clone();
    sorted.sort_by(f64::total_cmp);
    assert!((sorted[sorted.len() / 2] - 0.979).abs() < 0.01);
    assert!((p.median() - 0.979).abs() < 1e-3);
}

#[test]
fn determinism_and_empty() {
    let p = NgFisk64::new(2.0, 1.5, 3.0, 0.6).unwrap();
    assert_eq!(p.sample(257, 99), p.sample(257, 99));
    assert_ne!(p.sample(8, 1), p.sample(8, 2));
    assert!(p.sample(0, 5).is_empty());
}
