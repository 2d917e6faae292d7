use nalgebra::{DMatrix, SymmetricEigen};

/// Central-difference Hessian with per-coordinate steps `max(1e-4, 1e-4·|x|)`.
pub fn numeric_hessian<F: Fn(&[f64]) -> f64>(f: F, x: &[f64]) -> DMatrix<f64> {
    let k = x.len();
    let h: Vec<f64> = x.iter().map(|v| (1e-4 * v.abs()).max(1e-4)).collect();
    let f0 = f(x);
    let mut hess = DMatrix::zeros(k, k);
    let mut p = x.to_vec();
    let eval = |p: &mut Vec<f64>, i: usize, di: f64, j: usize, dj: f64| {
        p[i] += di;
        p[j] += dj;
        let v = f(p);
        p[i] -= di;
        p[j] -= dj;
        v
    };
    for i in 0..k {
        let up = eval(&mut p, i, h[i], i, 0.0);
        let down = eval(&mut p, i, -h[i], i, 0.0);
        hess[(i, i)] = (up - 2.0 * f0 + down) / (h[i] * h[i]);
        for j in 0..i {
            let pp = eval(&mut p, i, h[i], j, h[j]);
            let pm = eval(&mut p, i, h[i], j, -h[j]);
            let mp = eval(&mut p, i, -h[i], j, h[j]);
            let mm = eval(&mut p, i, -h[i], j, -h[j]);
            let v = (pp - pm - mp + mm) / (4.0 * h[i] * h[j]);
            hess[(i, j)] = v;
            hess[(j, i)] = v;
        }
    }
    hess
}

/// Standard errors from the observed information of a negative log-likelihood.
///
/// Returns the square roots of the diagonal of the inverse Hessian. Where the
/// Hessian is singular or indefinite, a component is reported as `None` when
/// it loads on a non-positive eigendirection; the remaining components use the
/// pseudo-inverse restricted to the positive eigenspace.
pub fn observed_info_se<F: Fn(&[f64]) -> f64>(nll: F, x: &[f64]) -> Vec<Option<f64>> {
    if x.is_empty() {
        return Vec::new();
    }
    let hess = numeric_hessian(nll, x);
    if hess.iter().any(|v| !v.is_finite()) {
        return vec![None; x.len()];
    }
    let eig = SymmetricEigen::new(hess);
    let scale = eig.eigenvalues.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let cutoff = 1e-9 * scale;
    (0..x.len())
        .map(|i| {
            let mut variance = 0.0;
            for (j, &lambda) in eig.eigenvalues.iter().enumerate() {
                let w = eig.eigenvectors[(i, j)].powi(2);
                if lambda <= cutoff {
                    if w > 1e-8 {
                        return None;
                    }
                } else {
                    variance += w / lambda;
                }
            }
            Some(variance.sqrt())
        })
        .collect()
}
