use num::bigint::BigInt;
use num::traits::Pow;

use super::poly::{char_poly, Isolator};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::Rational;
use crate::scalar::Scalar;

/// Certified κ₂ bracket.
#[derive(Clone, Debug)]
pub struct ConditionEstimate {
    /// Nearest double to the bracket midpoint.
    pub value: f64,
    /// κ₂ rounded to the requested significant digits, e.g. `3.2e8`.
    pub text: String,
    pub lower: Rational,
    pub upper: Rational,
}

fn ten_pow(k: u32) -> BigInt {
    Pow::pow(BigInt::from(10u32), k)
}

/// `√x` bracketed on the grid `10^−k`.
fn sqrt_bracket(lo: &Rational, hi: &Rational, k: u32) -> (Rational, Rational) {
    let scale = Rational::from(ten_pow(2 * k));
    let den = ten_pow(k);
    let floor = (lo * &scale).as_big().floor().to_integer();
    let ceil = (hi * &scale).as_big().ceil().to_integer();
    let a = Rational::new(floor.sqrt(), den.clone()).expect("nonzero");
    let b = Rational::new(ceil.sqrt() + 1, den).expect("nonzero");
    (a, b)
}

/// `κ₂(M) = √(λ_max / λ_min)` of `MᵀM`, certified to `digits` significant
/// digits from exact isolating intervals of the characteristic polynomial.
pub fn condition_2(matrix: &Matrix<Rational>, digits: usize) -> Result<ConditionEstimate> {
    let digits = digits.max(1);
    matrix.order()?;
    let gram = matrix.transpose().matmul(matrix)?;
    let p = char_poly(&gram)?;
    if p.coefficients().first().is_none_or(|c| c.is_zero()) {
        return Err(Error::Singular);
    }
    let p = p.squarefree_part();
    let isolator = Isolator::new(&p)?;
    let roots = isolator.intervals();
    let (mut min, mut max) = match (roots.first(), roots.last()) {
        (Some(a), Some(b)) => (a.clone(), b.clone()),
        _ => return Err(Error::Singular),
    };
    let mut tol = Rational::new(1.into(), ten_pow(digits as u32 + 6)).expect("nonzero");
    let step = Rational::new(1.into(), ten_pow(10)).expect("nonzero");
    let mut last = None;
    for _ in 0..12 {
        // Only the extreme eigenvalues matter; refine them in place.
        min = isolator.refine(min, &tol);
        max = isolator.refine(max, &tol);
        if min.lo.is_positive() {
            let lo2 = &max.lo / &min.hi;
            let hi2 = &max.hi / &min.lo;
            let estimate = lo2.to_f64().sqrt();
            let k = (digits as i64 + 4 - estimate.log10().floor() as i64).max(0) as u32;
            let (lower, upper) = sqrt_bracket(&lo2, &hi2, k);
            let text = lower.to_scientific(digits);
            let done = text == upper.to_scientific(digits);
            let est = ConditionEstimate {
                value: (&(&lower + &upper) / &Rational::from(2)).to_f64(),
                text,
                lower,
                upper,
            };
            if done {
                return Ok(est);
            }
            last = Some(est);
        }
        tol = &tol * &step;
    }
    // A value sitting on a rounding boundary never settles; report the bracket.
    last.ok_or(Error::Singular)
}
