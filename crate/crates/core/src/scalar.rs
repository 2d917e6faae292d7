//! Floating-point scalar abstraction shared by every distribution routine.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssignOps, ToPrimitive};

/// A real scalar the distribution code can be instantiated with (`f32`, `f64`).
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + NumAssignOps + Debug + Display + Send + Sync + 'static
{
    /// Converts an `f64` literal into the scalar type.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal representable in scalar type")
    }

    /// Lossy conversion to `f64`, used for error reporting and I/O.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// `ln(1 + e^v)` without overflow for large `v`.
    #[inline]
    fn ln1p_exp(self) -> Self {
        if self > Self::lit(35.0) {
            self + (-self).exp()
        } else {
            self.exp().ln_1p()
        }
    }

    /// Logistic function `1 / (1 + e^-v)`.
    #[inline]
    fn logistic(self) -> Self {
        if self >= Self::zero() {
            Self::one() / (Self::one() + (-self).exp())
        } else {
            let e = self.exp();
            e / (Self::one() + e)
        }
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln1p_exp_matches_naive_in_safe_range() {
        for v in [-20.0_f64, -1.0, 0.0, 0.5, 10.0, 30.0] {
            assert!((v.ln1p_exp() - (1.0 + v.exp()).ln()).abs() < 1e-12);
        }
        assert!((800.0_f64.ln1p_exp() - 800.0).abs() < 1e-12);
    }

    #[test]
    fn logistic_is_symmetric() {
        for v in [-700.0_f64, -3.0, 0.0, 2.5, 700.0] {
            assert!((v.logistic() + (-v).logistic() - 1.0).abs() < 1e-15);
        }
        assert_eq!(0.0_f32.logistic(), 0.5);
    }
}
