//! Exact arbitrary-precision rationals and the scalar literal grammar.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::{BigInt, Sign};
use num::rational::BigRational;
use num::traits::{One, Pow, Signed, ToPrimitive, Zero};
use num::Integer;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// An exact rational number, always in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: BigInt, denom: BigInt) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self(BigRational::new(numer, denom)))
    }

    pub fn from_integer(value: BigInt) -> Self {
        Self(BigRational::from_integer(value))
    }

    pub fn from_ratio(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Self(BigRational::new(numer.into(), denom.into()))
    }

    /// The exact value of a finite `f64`.
    pub fn from_f64(value: f64) -> Option<Self> {
        BigRational::from_float(value).map(Self)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    /// Nearest `f64`, ties to even.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn signum(&self) -> i32 {
        match self.0.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.0.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(Self(self.0.recip()))
        }
    }

    pub fn powi(&self, exp: u32) -> Self {
        Self(Pow::pow(&self.0, exp))
    }

    pub fn abs_value(&self) -> Self {
        Self(self.0.abs())
    }

    /// `⌊log₁₀ |x|⌋` for nonzero `x`.
    pub fn decimal_exponent(&self) -> i64 {
        assert!(!self.0.is_zero(), "decimal exponent of zero");
        let x = self.0.abs();
        let ten = BigRational::from_integer(10.into());
        // Estimate from bit lengths, then correct.
        let bits = self.numer().bits() as i64 - self.denom().bits() as i64;
        let mut e = (bits as f64 * std::f64::consts::LOG10_2).floor() as i64;
        loop {
            let lo = pow10(&ten, e);
            if x < lo {
                e -= 1;
            } else if x >= pow10(&ten, e + 1) {
                e += 1;
            } else {
                return e;
            }
        }
    }

    /// Scientific notation rounded half-up to `digits` significant digits,
    /// e.g. `3.2e8`.
    pub fn to_scientific(&self, digits: usize) -> String {
        assert!(digits >= 1);
        if self.0.is_zero() {
            return "0".to_string();
        }
        let sign = if self.is_negative() { "-" } else { "" };
        let x = self.0.abs();
        let ten = BigRational::from_integer(10.into());
        let mut e = self.decimal_exponent();
        let scale = pow10(&ten, digits as i64 - 1 - e);
        let mut mantissa = (x.clone() * scale + BigRational::new(1.into(), 2.into())).floor().to_integer();
        if mantissa >= BigInt::from(10u32).pow(digits as u32) {
            mantissa /= 10;
            e += 1;
        }
        let m = mantissa.to_string();
        let (head, tail) = m.split_at(1);
        if tail.is_empty() {
            format!("{sign}{head}e{e}")
        } else {
            format!("{sign}{head}.{tail}e{e}")
        }
    }
}

fn pow10(ten: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        Pow::pow(ten, e as u64)
    } else {
        Pow::pow(ten, (-e) as u64).recip()
    }
}

/// Parses a scalar literal: `[-]digits[.digits]` or `[-]digits/digits`.
///
/// Decimals are converted exactly (`"0.25"` is `1/4`).
pub fn parse_scalar(text: &str) -> Result<Rational> {
    let s = text.trim();
    let malformed = || Error::MalformedScalar(text.to_string());
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let all_digits = |p: &str| !p.is_empty() && p.bytes().all(|b| b.is_ascii_digit());
    let value = if let Some((num, den)) = body.split_once('/') {
        if !all_digits(num) || !all_digits(den) {
            return Err(malformed());
        }
        let den: BigInt = den.parse().map_err(|_| malformed())?;
        if den.is_zero() {
            return Err(Error::ZeroDenominator(text.to_string()));
        }
        BigRational::new(num.parse().map_err(|_| malformed())?, den)
    } else if let Some((int, frac)) = body.split_once('.') {
        if !all_digits(int) || !all_digits(frac) {
            return Err(malformed());
        }
        let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| malformed())?;
        BigRational::new(digits, BigInt::from(10u32).pow(frac.len() as u32))
    } else {
        if !all_digits(body) {
            return Err(malformed());
        }
        BigRational::from_integer(body.parse().map_err(|_| malformed())?)
    };
    Ok(Rational(if negative { -value } else { value }))
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_scalar(s)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl<'a> Neg for &'a Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational(BigRational::from_integer(v.into()))
    }
}

impl From<BigInt> for Rational {
    fn from(v: BigInt) -> Self {
        Rational::from_integer(v)
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::from_ratio(num, den)
    }

    fn from_rational(value: &Rational) -> Self {
        value.clone()
    }

    fn to_f64(&self) -> f64 {
        Rational::to_f64(self)
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn abs(self) -> Self {
        self.abs_value()
    }
}

/// Exact binomial coefficient via `C(m, k) = C(m, k−1)·(m−k+1)/k`.
pub fn binomial(m: u64, k: u64) -> BigInt {
    if k > m {
        return BigInt::zero();
    }
    let k = k.min(m - k);
    let mut c = BigInt::one();
    for j in 1..=k {
        c = c * BigInt::from(m - j + 1);
        let (q, r) = c.div_rem(&BigInt::from(j));
        debug_assert!(r.is_zero());
        c = q;
    }
    c
}

impl PartialEq<i64> for Rational {
    fn eq(&self, other: &i64) -> bool {
        self.0 == BigRational::from_integer((*other).into())
    }
}

impl PartialOrd<i64> for Rational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        self.0.partial_cmp(&BigRational::from_integer((*other).into()))
    }
}
