//! Scalar abstraction shared by the numerical core.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point type the numerical routines are generic over (`f32` or `f64`).
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Sum
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + serde::Serialize
    + serde::de::DeserializeOwned
    + 'static
{
    /// Converts an `f64` literal into the scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    /// Converts a count or index.
    #[inline]
    fn of(k: usize) -> Self {
        Self::from_usize(k).expect("integer representable in scalar type")
    }

    #[inline]
    fn f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// `ln(sinh x)` for x > 0 without overflow.
pub fn ln_sinh<T: Real>(x: T) -> T {
    if x > T::lit(20.0) {
        x - T::LN_2() + (-(T::lit(-2.0) * x).exp()).ln_1p()
    } else {
        x.sinh().ln()
    }
}

/// `ln(cosh x)` without overflow and without cancellation near 0.
pub fn ln_cosh<T: Real>(x: T) -> T {
    let a = x.abs();
    if a > T::lit(20.0) {
        a - T::LN_2() + (T::lit(-2.0) * a).exp().ln_1p()
    } else {
        let h = (a * T::lit(0.5)).sinh();
        (T::lit(2.0) * h * h).ln_1p()
    }
}

/// `acosh(1 + x)` for x ≥ 0, accurate when x is tiny.
pub fn acosh1p<T: Real>(x: T) -> T {
    let x = x.max(T::zero());
    (x + (x * (x + T::lit(2.0))).sqrt()).ln_1p()
}

/// `ln(e^a + e^b)`.
pub fn log_add_exp<T: Real>(a: T, b: T) -> T {
    if a == T::neg_infinity() {
        return b;
    }
    if b == T::neg_infinity() {
        return a;
    }
    let m = a.max(b);
    m + ((a - m).exp() + (b - m).exp()).ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stable_logs_match_direct_forms() {
        let tiny = 1e-8_f64;
        assert!((ln_cosh(tiny) - tiny * tiny / 2.0).abs() < 1e-30);
        for &x in &[0.3, 2.0, 19.0, 25.0] {
            let x: f64 = x;
            assert!((ln_cosh(x) - x.cosh().ln()).abs() <= 1e-14 * x.cosh().ln());
            assert!((ln_sinh(x) - x.sinh().ln()).abs() < 1e-13 * x.sinh().ln().abs().max(1.0));
        }
        assert!((ln_cosh(800.0_f64) - (800.0 - 2f64.ln())).abs() < 1e-12);
    }

    #[test]
    fn acosh1p_small_argument() {
        let r = 1e-6_f64;
        let x = 2.0 * (r / 2.0).sinh().powi(2);
        assert!((acosh1p(x) - r).abs() < 1e-18);
        assert!((acosh1p(3.0_f64) - 4.0_f64.acosh()).abs() < 1e-15);
    }

    #[test]
    fn generic_over_f32() {
        let v: f32 = ln_cosh(1.0_f32);
        assert!((v - 1.0_f32.cosh().ln()).abs() < 1e-6);
    }
}
