//! The arithmetic contract every kernel in this crate is written against.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A real scalar field, exact or floating.
///
/// Kernels only rely on the operations listed here, so a single
/// implementation runs in `f64`, in exact [`Rational`] arithmetic, or under
/// the auditing scalar of [`crate::audit`].
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Whether the field axioms hold exactly.
    const EXACT: bool;

    /// The value `num / den`. `den` must be nonzero.
    fn from_ratio(num: i64, den: i64) -> Self;

    /// Converts an exact rational, rounding to nearest in floating types.
    fn from_rational(value: &Rational) -> Self;

    fn to_f64(&self) -> f64;

    /// Exact value, when finite.
    fn to_rational(&self) -> Option<Rational>;

    fn is_zero(&self) -> bool;

    fn zero() -> Self {
        Self::from_ratio(0, 1)
    }

    fn one() -> Self {
        Self::from_ratio(1, 1)
    }

    fn from_int(value: i64) -> Self {
        Self::from_ratio(value, 1)
    }

    fn abs(self) -> Self {
        if self < Self::zero() {
            -self
        } else {
            self
        }
    }

    /// Division that reports a zero divisor instead of producing a
    /// non-finite value or panicking.
    fn try_div(self, rhs: Self) -> Result<Self> {
        if rhs.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(self / rhs)
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_ratio(num: i64, den: i64) -> Self {
        if den == 1 {
            num as f64
        } else {
            Rational::from_ratio(num, den).to_f64()
        }
    }

    fn from_rational(value: &Rational) -> Self {
        value.to_f64()
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_rational(&self) -> Option<Rational> {
        Rational::from_f64(*self)
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }
}

/// Sum of `values` with Neumaier's compensated summation.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Euclidean norm, scaled to avoid overflow and underflow.
pub fn norm2(values: &[f64]) -> f64 {
    let scale = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if scale == 0.0 || !scale.is_finite() {
        return scale;
    }
    let ss = compensated_sum(values.iter().map(|v| (v / scale) * (v / scale)));
    scale * ss.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f64_ratio_is_correctly_rounded() {
        assert_eq!(f64::from_ratio(1, 13), 1.0 / 13.0);
        assert_eq!(f64::from_ratio(20, 21), 20.0 / 21.0);
        assert_eq!(f64::from_ratio(-7, 18), -7.0 / 18.0);
    }

    #[test]
    fn try_div_rejects_zero() {
        assert_eq!(1.0_f64.try_div(0.0), Err(Error::DivisionByZero));
        assert_eq!(Rational::one().try_div(Rational::zero()), Err(Error::DivisionByZero));
        assert_eq!(3.0_f64.try_div(2.0), Ok(1.5));
    }

    #[test]
    fn compensated_sum_recovers_cancelled_terms() {
        let v = [1.0, 1e100, 1.0, -1e100];
        assert_eq!(compensated_sum(v), 2.0);
    }

    #[test]
    fn norm2_handles_tiny_values() {
        let v = [3e-200, 4e-200];
        assert!((norm2(&v) - 5e-200).abs() <= 1e-214);
        assert_eq!(norm2(&[]), 0.0);
    }
}
