//! Box-constrained local minimizers used by the fitting engine.

#[derive(Debug, Clone)]
pub struct NmOptions {
    pub initial_step: f64,
    pub max_evals: usize,
    /// Stop once every vertex lies within this distance (max-norm) of the best.
    pub x_tol: f64,
    /// Stop once the spread of simplex values falls below `f_tol·(1 + |f_best|)`.
    pub f_tol: f64,
}

impl Default for NmOptions {
    fn default() -> Self {
        NmOptions {
            initial_step: 0.25,
            max_evals: 4000,
            x_tol: 1e-8,
            f_tol: 1e-13,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NmOutcome {
    pub x: Vec<f64>,
    pub fx: f64,
    pub evals: usize,
    pub diameter: f64,
}

fn project(x: &mut [f64], lo: &[f64], hi: &[f64]) {
    for ((v, &l), &h) in x.iter_mut().zip(lo).zip(hi) {
        *v = v.clamp(l, h);
    }
}

/// Nelder–Mead with dimension-adaptive coefficients. Every trial point is
/// projected onto the box `[lo, hi]`.
pub fn nelder_mead<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    x0: &[f64],
    lo: &[f64],
    hi: &[f64],
    opts: &NmOptions,
) -> NmOutcome {
    let n = x0.len();
    let dim = n as f64;
    let (reflect, expand) = (1.0, 1.0 + 2.0 / dim);
    let (contract, shrink) = (0.75 - 0.5 / dim, 1.0 - 1.0 / dim);

    let mut start = x0.to_vec();
    project(&mut start, lo, hi);
    let mut simplex = vec![start.clone()];
    for i in 0..n {
        let mut v = start.clone();
        let step = opts.initial_step.min(0.5 * (hi[i] - lo[i]));
        v[i] = if v[i] + step <= hi[i] { v[i] + step } else { v[i] - step };
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| f(v)).collect();
    let mut evals = n + 1;

    let trial = |centroid: &[f64], worst: &[f64], coef: f64| -> Vec<f64> {
        let mut p: Vec<f64> = centroid.iter().zip(worst).map(|(c, w)| c + coef * (c - w)).collect();
        project(&mut p, lo, hi);
        p
    };

    loop {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        let diameter = simplex[1..]
            .iter()
            .flat_map(|v| v.iter().zip(&simplex[0]).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        let spread = values[n] - values[0];
        if diameter < opts.x_tol
            || (values[0].is_finite() && spread <= opts.f_tol * (1.0 + values[0].abs()))
            || evals >= opts.max_evals
        {
            return NmOutcome {
                x: simplex[0].clone(),
                fx: values[0],
                evals,
                diameter,
            };
        }

        let mut centroid = vec![0.0; n];
        for v in &simplex[..n] {
            for (c, x) in centroid.iter_mut().zip(v) {
                *c += x / dim;
            }
        }

        let xr = trial(&centroid, &simplex[n], reflect);
        let fr = f(&xr);
        evals += 1;
        if fr < values[0] {
            let xe = trial(&centroid, &simplex[n], reflect * expand);
            let fe = f(&xe);
            evals += 1;
            if fe < fr {
                simplex[n] = xe;
                values[n] = fe;
            } else {
                simplex[n] = xr;
                values[n] = fr;
            }
            continue;
        }
        if fr < values[n - 1] {
            simplex[n] = xr;
            values[n] = fr;
            continue;
        }
        let (xc, fc) = if fr < values[n] {
            let xc = trial(&centroid, &simplex[n], reflect * contract);
            let fc = f(&xc);
            (xc, fc)
        } else {
            let xc = trial(&centroid, &simplex[n], -contract);
            let fc = f(&xc);
            (xc, fc)
        };
        evals += 1;
        if fc < values[n].min(fr) {
            simplex[n] = xc;
            values[n] = fc;
            continue;
        }
        let best = simplex[0].clone();
        for i in 1..=n {
            for (x, b) in simplex[i].iter_mut().zip(&best) {
                *x = b + shrink * (*x - b);
            }
            values[i] = f(&simplex[i]);
        }
        evals += n;
    }
}

#[derive(Debug, Clone)]
pub struct PgOptions {
    pub max_iters: usize,
    pub gradient_tol: f64,
}

impl Default for PgOptions {
    fn default() -> Self {
        PgOptions {
            max_iters: 500,
            gradient_tol: 1e-7,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PgOutcome {
    pub x: Vec<f64>,
    pub fx: f64,
    pub iterations: usize,
    /// Norm of the projected gradient at `x`.
    pub gradient_norm: f64,
}

/// Gradient components that could still move `x` inside the box.
fn projected(x: &[f64], g: &[f64], lo: &[f64], hi: &[f64]) -> Vec<f64> {
    x.iter()
        .zip(g)
        .zip(lo.iter().zip(hi))
        .map(|((&xi, &gi), (&l, &h))| {
            if (xi <= l && gi > 0.0) || (xi >= h && gi < 0.0) {
                0.0
            } else {
                gi
            }
        })
        .collect()
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum::<f64>().sqrt()
}

/// Projected gradient descent with Barzilai–Borwein steps and an Armijo
/// backtracking safeguard. Never returns a point worse than `x0` by more
/// than rounding in `f`.
pub fn projected_gradient<F, G>(mut f: F, mut grad: G, x0: &[f64], lo: &[f64], hi: &[f64], opts: &PgOptions) -> PgOutcome
where
    F: FnMut(&[f64]) -> f64,
    G: FnMut(&[f64]) -> Vec<f64>,
{
    let mut x = x0.to_vec();
    project(&mut x, lo, hi);
    let mut fx = f(&x);
    let mut g = grad(&x);
    let mut pg = projected(&x, &g, lo, hi);
    let mut step = 1e-2 / norm(&pg).max(1e-12);
    let mut iterations = 0;

    while iterations < opts.max_iters && norm(&pg) > opts.gradient_tol && fx.is_finite() {
        iterations += 1;
        let mut accepted = None;
        let mut s = step;
        let noise = 1e-12 * (1.0 + fx.abs());
        let pg_norm = norm(&pg);
        for _ in 0..60 {
            let mut xn: Vec<f64> = x.iter().zip(&g).map(|(a, b)| a - s * b).collect();
            project(&mut xn, lo, hi);
            let decrease: f64 = g.iter().zip(x.iter().zip(&xn)).map(|(gi, (a, b))| gi * (a - b)).sum();
            let fxn = f(&xn);
            if decrease > 0.0 && fxn <= fx - 1e-4 * decrease {
                accepted = Some((xn, fxn, None));
                break;
            }
            // Near the optimum the objective is flat to rounding; accept steps
            // that shrink the projected gradient without a measurable loss.
            if decrease > 0.0 && fxn <= fx + noise {
                let gn = grad(&xn);
                if norm(&projected(&xn, &gn, lo, hi)) < pg_norm {
                    accepted = Some((xn, fxn, Some(gn)));
                    break;
                }
            }
            s *= 0.5;
        }
        let Some((xn, fxn, gn)) = accepted else { break };
        let gn = gn.unwrap_or_else(|| grad(&xn));
        let dx: Vec<f64> = xn.iter().zip(&x).map(|(a, b)| a - b).collect();
        let dg: Vec<f64> = gn.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy: f64 = dx.iter().zip(&dg).map(|(a, b)| a * b).sum();
        let ss: f64 = dx.iter().map(|a| a * a).sum();
        step = if sy > 0.0 { ss / sy } else { 2.0 * s };
        x = xn;
        fx = fxn;
        g = gn;
        pg = projected(&x, &g, lo, hi);
    }

    PgOutcome {
        gradient_norm: norm(&pg),
        x,
        fx,
        iterations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rosenbrock(x: &[f64]) -> f64 {
        (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2)
    }

    fn rosenbrock_grad(x: &[f64]) -> Vec<f64> {
        vec![
            -2.0 * (1.0 - x[0]) - 400.0 * x[0] * (x[1] - x[0] * x[0]),
            200.0 * (x[1] - x[0] * x[0]),
        ]
    }

    #[test]
    fn nelder_mead_finds_rosenbrock_minimum() {
        let inf = [f64::INFINITY; 2];
        let out = nelder_mead(rosenbrock, &[-1.2, 1.0], &[-f64::INFINITY; 2], &inf, &NmOptions::default());
        assert!((out.x[0] - 1.0).abs() < 1e-5 && (out.x[1] - 1.0).abs() < 1e-5, "{out:?}");
    }

    #[test]
    fn nelder_mead_respects_box() {
        let out = nelder_mead(
            |x| (x[0] - 3.0).powi(2) + (x[1] + 1.0).powi(2),
            &[0.0, 0.0],
            &[-1.0, -0.5],
            &[2.0, 0.5],
            &NmOptions::default(),
        );
        assert_eq!(out.x, vec![2.0, -0.5]);
    }

    #[test]
    fn projected_gradient_polishes_and_stops_on_bounds() {
        let lo = [-5.0, -5.0];
        let hi = [5.0, 5.0];
        let out = projected_gradient(rosenbrock, rosenbrock_grad, &[0.9, 0.8], &lo, &hi, &PgOptions {
            max_iters: 20_000,
            gradient_tol: 1e-9,
        });
        assert!(out.gradient_norm < 1e-9, "{out:?}");
        assert!((out.x[0] - 1.0).abs() < 1e-7);

        let out = projected_gradient(
            |x| (x[0] - 3.0).powi(2),
            |x| vec![2.0 * (x[0] - 3.0)],
            &[0.0],
            &[-1.0],
            &[1.0],
            &PgOptions::default(),
        );
        assert_eq!(out.x, vec![1.0]);
        assert_eq!(out.gradient_norm, 0.0);
    }

    #[test]
    fn projected_gradient_never_worsens() {
        let start = [0.3, -0.2];
        let out = projected_gradient(rosenbrock, rosenbrock_grad, &start, &[-2.0; 2], &[2.0; 2], &PgOptions {
            max_iters: 3,
            gradient_tol: 0.0,
        });
        assert!(out.fx <= rosenbrock(&start));
    }
}
