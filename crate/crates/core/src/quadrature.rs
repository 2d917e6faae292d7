//! Globally adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! Finite intervals are integrated directly. Half-infinite intervals
//! `[a, ∞)` are mapped onto `[0, 1)` through `x = a + t / (1 - t)`.
//! The nodes are never placed on an interval endpoint, so integrable
//! endpoint singularities are handled by bisection.

#![allow(clippy::excessive_precision)]

use crate::scalar::Scalar;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions<T> {
    pub abs_tol: T,
    pub rel_tol: T,
    pub max_intervals: usize,
}

impl<T: Scalar> Default for QuadOptions<T> {
    fn default() -> Self {
        // Tighter than f32 can deliver; the loop then stops on max_intervals.
        let eps = T::epsilon();
        QuadOptions {
            abs_tol: (T::lit(1e-13)).max(eps * T::lit(50.0)),
            rel_tol: (T::lit(1e-11)).max(eps * T::lit(50.0)),
            max_intervals: 4000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral<T> {
    pub value: T,
    pub abs_error: T,
    pub intervals: usize,
    pub converged: bool,
}

#[derive(Clone, Copy)]
struct Segment<T> {
    a: T,
    b: T,
    value: T,
    error: T,
}

fn kronrod<T: Scalar, F: Fn(T) -> T>(f: &F, a: T, b: T) -> Segment<T> {
    let half = T::lit(0.5);
    let center = half * (a + b);
    let half_len = half * (b - a);
    let fc = f(center);
    let mut kron = fc * T::lit(WGK[7]);
    let mut gauss = fc * T::lit(WG[3]);
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half_len * T::lit(x);
        let pair = f(center - dx) + f(center + dx);
        kron += T::lit(w) * pair;
        if j % 2 == 1 {
            gauss += T::lit(WG[j / 2]) * pair;
        }
    }
    Segment {
        a,
        b,
        value: kron * half_len,
        error: ((kron - gauss) * half_len).abs(),
    }
}

/// Integrates `f` over the finite interval `[a, b]`.
pub fn integrate<T: Scalar, F: Fn(T) -> T>(f: F, a: T, b: T, opts: QuadOptions<T>) -> Integral<T> {
    if a == b {
        return Integral {
            value: T::zero(),
            abs_error: T::zero(),
            intervals: 0,
            converged: true,
        };
    }
    if b < a {
        let mut r = integrate(f, b, a, opts);
        r.value = -r.value;
        return r;
    }

    let mut segments = vec![kronrod(&f, a, b)];
    loop {
        let total: T = segments.iter().fold(T::zero(), |s, g| s + g.value);
        let error: T = segments.iter().fold(T::zero(), |s, g| s + g.error);
        let target = opts.abs_tol.max(opts.rel_tol * total.abs());
        if error <= target || segments.len() >= opts.max_intervals || !error.is_finite() {
            return Integral {
                value: total,
                abs_error: error,
                intervals: segments.len(),
                converged: error <= target,
            };
        }
        let worst = segments
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.partial_cmp(&y.1.error).unwrap_or(std::cmp::Ordering::Equal))
            .map(|(i, _)| i)
            .expect("nonempty");
        let seg = segments.swap_remove(worst);
        let mid = T::lit(0.5) * (seg.a + seg.b);
        if mid <= seg.a || mid >= seg.b {
            // Interval cannot be split further in this precision.
            segments.push(Segment { error: T::zero(), ..seg });
            continue;
        }
        segments.push(kronrod(&f, seg.a, mid));
        segments.push(kronrod(&f, mid, seg.b));
    }
}

/// Integrates `f` over `[a, ∞)`.
pub fn integrate_to_inf<T: Scalar, F: Fn(T) -> T>(f: F, a: T, opts: QuadOptions<T>) -> Integral<T> {
    let one = T::one();
    integrate(
        |t: T| {
            let s = one - t;
            let v = f(a + t / s) / (s * s);
            if v.is_finite() {
                v
            } else {
                T::zero()
            }
        },
        T::zero(),
        one,
        opts,
    )
}
