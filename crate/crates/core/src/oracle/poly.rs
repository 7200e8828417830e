//! Exact characteristic polynomials and Sturm-sequence root isolation.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::Rational;
use crate::scalar::Scalar;
use num::bigint::{BigInt, Sign};
use num::{Integer, One, Signed, Zero};

/// Dense univariate polynomial, coefficients in ascending degree, no
/// trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn sign_at(&self, x: &Rational) -> i32 {
        self.eval(x).signum()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &Rational::from(k as i64))
                .collect(),
        )
    }

    fn scale(&self, f: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * f).collect())
    }

    /// Remainder of division by a nonzero `divisor`.
    pub fn rem(&self, divisor: &Polynomial) -> Polynomial {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let mut r = self.coeffs.clone();
        let dl = divisor.leading();
        let dd = divisor.degree();
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let f = r.last().unwrap() / &dl;
            for (k, c) in divisor.coeffs.iter().enumerate() {
                r[shift + k] = &r[shift + k] - &(&f * c);
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Polynomial::new(r)
    }

    /// Quotient and remainder of division by a nonzero `divisor`.
    pub fn div_rem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.degree();
        if self.coeffs.len() <= dd {
            return (Polynomial::new(Vec::new()), self.clone());
        }
        let dl = divisor.leading();
        let mut r = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); r.len() - dd];
        while r.len() > dd {
            let shift = r.len() - 1 - dd;
            let f = r.last().unwrap() / &dl;
            for (k, c) in divisor.coeffs.iter().enumerate() {
                r[shift + k] = &r[shift + k] - &(&f * c);
            }
            quot[shift] = f;
            r.pop();
        }
        (Polynomial::new(quot), Polynomial::new(r))
    }

    /// `p / gcd(p, p′)`: same roots, all simple.
    pub fn squarefree_part(&self) -> Polynomial {
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            return self.clone();
        }
        self.div_rem(&g).0
    }

    /// Monic greatest common divisor (primitive remainder sequence).
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let (mut a, mut b) = (IntPoly::primitive_of(self), IntPoly::primitive_of(other));
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = IntPoly::normalized(a.pseudo_rem(&b).0);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return Polynomial::new(Vec::new());
        }
        let g = a.to_polynomial();
        let lead = g.leading().recip().expect("nonzero leading coefficient");
        g.scale(&lead)
    }

    /// `1 + max |a_k / a_n|`: every root has modulus below this.
    pub fn cauchy_bound(&self) -> Rational {
        let lead = self.leading().abs_value();
        let max = self.coeffs[..self.degree()]
            .iter()
            .map(|c| &c.abs_value() / &lead)
            .max()
            .unwrap_or_else(Rational::zero);
        &max + &Rational::one()
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial{:?}", self.coeffs)
    }
}

/// Primitive integer polynomial, ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
struct IntPoly(Vec<BigInt>);

impl IntPoly {
    /// Positive multiple of `p` with coprime integer coefficients.
    fn primitive_of(p: &Polynomial) -> Self {
        let lcm = p
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints = p
            .coeffs
            .iter()
            .map(|c| c.numer() * &(&lcm / c.denom()))
            .collect();
        Self::normalized(ints)
    }

    /// Strips trailing zeros and divides by the (positive) content.
    fn normalized(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        let content = c.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if !content.is_zero() && !content.is_one() {
            for x in &mut c {
                *x = &*x / &content;
            }
        }
        IntPoly(c)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn leading(&self) -> &BigInt {
        self.0.last().expect("nonzero polynomial")
    }

    fn derivative(&self) -> Self {
        Self::normalized(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// `lc(d)^e · self mod d`, returned with the exponent `e`.
    fn pseudo_rem(&self, d: &IntPoly) -> (Vec<BigInt>, usize) {
        let mut r = self.0.clone();
        let mut e = 0;
        let dd = d.degree();
        let lc = d.leading();
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let top = r.last().unwrap().clone();
            for x in r.iter_mut() {
                *x = &*x * lc;
            }
            for (k, c) in d.0.iter().enumerate() {
                r[shift + k] -= &top * c;
            }
            r.pop();
            e += 1;
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        (r, e)
    }

    /// Sign of `p(num/den)` for `den > 0`, by homogeneous Horner.
    fn sign_at(&self, num: &BigInt, den: &BigInt) -> i32 {
        let d = self.degree();
        let mut acc = BigInt::zero();
        let mut den_pow = BigInt::one();
        // acc = Σ c_i num^i den^(d−i), built from the top.
        for (i, c) in self.0.iter().enumerate().rev() {
            if i == d {
                acc = c.clone();
            } else {
                den_pow *= den;
                acc = acc * num + c * &den_pow;
            }
        }
        match acc.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    fn to_polynomial(&self) -> Polynomial {
        Polynomial::new(self.0.iter().cloned().map(Rational::from).collect())
    }
}

/// Sturm chain `p, p′, −rem, …` kept primitive; every term is a positive
/// multiple of the classical one, so sign counts are unchanged.
fn sturm_chain(p: &IntPoly) -> Vec<IntPoly> {
    let mut chain = vec![p.clone()];
    let d = p.derivative();
    if d.is_zero() {
        return chain;
    }
    chain.push(d);
    loop {
        let k = chain.len();
        let (a, b) = (&chain[k - 2], &chain[k - 1]);
        let (mut r, e) = a.pseudo_rem(b);
        // Undo the sign of lc^e, then negate.
        let negative_factor = b.leading().is_negative() && e % 2 == 1;
        if !negative_factor {
            for x in r.iter_mut() {
                *x = -&*x;
            }
        }
        let r = IntPoly::normalized(r);
        if r.is_zero() {
            break;
        }
        chain.push(r);
    }
    chain
}

fn sign_variations(chain: &[IntPoly], x: &Rational) -> usize {
    let (num, den) = (x.numer(), x.denom());
    let mut last = 0;
    let mut count = 0;
    for p in chain {
        let s = p.sign_at(num, den);
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// `det(λI − M)` for an integer matrix, by the division-free
/// Samuelson–Berkowitz recursion. Coefficients highest degree first.
fn berkowitz(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = m.len();
    if n == 0 {
        return vec![BigInt::one()];
    }
    // Characteristic polynomial of the trailing 1×1 block.
    let mut p = vec![BigInt::one(), -m[n - 1][n - 1].clone()];
    for k in (0..n - 1).rev() {
        let size = n - k - 1; // order of the trailing block A1
        let row = &m[k][k + 1..];
        // Toeplitz column: 1, −a, −R C, −R A1 C, …, −R A1^(size−1) C.
        let mut t = Vec::with_capacity(size + 2);
        t.push(BigInt::one());
        t.push(-m[k][k].clone());
        let mut v: Vec<BigInt> = (k + 1..n).map(|i| m[i][k].clone()).collect();
        for j in 0..size {
            let rc: BigInt = row.iter().zip(&v).map(|(r, c)| r * c).sum();
            t.push(-rc);
            if j + 1 < size {
                v = (0..size)
                    .map(|i| (0..size).map(|l| &m[k + 1 + i][k + 1 + l] * &v[l]).sum())
                    .collect();
            }
        }
        let next = (0..size + 2)
            .map(|i| {
                (0..=i.min(size))
                    .map(|j| &t[i - j] * &p[j])
                    .sum()
            })
            .collect();
        p = next;
    }
    p
}

/// Characteristic polynomial `det(λI − M)`, exactly.
///
/// Denominators are cleared first (`M′ = D·M`), the integer polynomial is
/// computed division-free, and `c_k = c′_k / D^(n−k)` maps it back.
pub fn char_poly(matrix: &Matrix<Rational>) -> Result<Polynomial> {
    let n = matrix.order()?;
    let d = matrix
        .as_slice()
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let x = &matrix[(i, j)];
                    x.numer() * &(&d / x.denom())
                })
                .collect()
        })
        .collect();
    let high_first = berkowitz(&ints);
    let d = Rational::from(d);
    let mut scale = Rational::one();
    let mut coeffs = Vec::with_capacity(n + 1);
    // high_first[n − k] is the coefficient of λ^k.
    for k in (0..=n).rev() {
        coeffs.push(Rational::from(high_first[n - k].clone()) / scale.clone());
        scale = &scale * &d;
    }
    coeffs.reverse();
    Ok(Polynomial::new(coeffs))
}

/// A rational interval `[lo, hi]` holding exactly one real root.
#[derive(Clone, Debug, PartialEq)]
pub struct IsolatedRoot {
    pub lo: Rational,
    pub hi: Rational,
}

impl IsolatedRoot {
    pub fn midpoint(&self) -> Rational {
        &(&self.lo + &self.hi) / &Rational::from(2)
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn to_f64(&self) -> f64 {
        self.midpoint().to_f64()
    }
}

/// Isolates every real root of a squarefree polynomial and refines each
/// interval to width `≤ tol · max(1, |root|)`. Roots come out ascending.
pub fn isolate_real_roots(p: &Polynomial, tol: &Rational) -> Result<Vec<IsolatedRoot>> {
    if p.degree() == 0 {
        return Ok(Vec::new());
    }
    let isolator = Isolator::new(p)?;
    Ok(isolator
        .intervals()
        .into_iter()
        .map(|root| isolator.refine(root, tol))
        .collect())
}

/// Sturm-based isolation state, reusable for incremental refinement.
pub(crate) struct Isolator {
    chain: Vec<IntPoly>,
    bound: Rational,
}

impl Isolator {
    pub(crate) fn new(p: &Polynomial) -> Result<Self> {
        let chain = sturm_chain(&IntPoly::primitive_of(p));
        // The chain ends in gcd(p, p′).
        if chain.last().is_some_and(|g| g.degree() > 0) {
            return Err(Error::NotSquarefree);
        }
        Ok(Isolator {
            chain,
            bound: p.cauchy_bound(),
        })
    }

    fn sign_at(&self, x: &Rational) -> i32 {
        self.chain[0].sign_at(x.numer(), x.denom())
    }

    /// Half-open intervals `(lo, hi]` holding one root each, ascending.
    pub(crate) fn intervals(&self) -> Vec<IsolatedRoot> {
        let two = Rational::from(2);
        let mut isolated = Vec::new();
        let mut stack = vec![(-self.bound.clone(), self.bound.clone())];
        while let Some((lo, hi)) = stack.pop() {
            let count = sign_variations(&self.chain, &lo) - sign_variations(&self.chain, &hi);
            match count {
                0 => {}
                1 => isolated.push(IsolatedRoot { lo, hi }),
                _ => {
                    let mid = &(&lo + &hi) / &two;
                    stack.push((mid.clone(), hi));
                    stack.push((lo, mid));
                }
            }
        }
        isolated.sort_by(|a, b| a.lo.cmp(&b.lo));
        isolated
    }

    /// Bisects an isolating interval until its width is at most
    /// `tol · max(1, min |endpoint|)`.
    pub(crate) fn refine(&self, root: IsolatedRoot, tol: &Rational) -> IsolatedRoot {
        let IsolatedRoot { mut lo, mut hi } = root;
        if lo == hi {
            return IsolatedRoot { lo, hi };
        }
        if self.sign_at(&hi) == 0 {
            return IsolatedRoot { lo: hi.clone(), hi };
        }
        let one = Rational::one();
        let two = Rational::from(2);
        loop {
            let limit = if lo.signum() * hi.signum() > 0 {
                // Interval excludes zero: |root| ≥ min(|lo|, |hi|).
                std::cmp::min(lo.abs_value(), hi.abs_value()).max(one.clone())
            } else {
                one.clone()
            };
            if &hi - &lo <= tol * &limit {
                break;
            }
            let mid = &(&lo + &hi) / &two;
            let s_mid = self.sign_at(&mid);
            if s_mid == 0 {
                lo = mid.clone();
                hi = mid;
                break;
            }
            let s_lo = self.sign_at(&lo);
            let in_left = if s_lo != 0 {
                s_lo != s_mid
            } else {
                // lo is a neighbour's root; count instead of comparing signs.
                sign_variations(&self.chain, &lo) - sign_variations(&self.chain, &mid) == 1
            };
            if in_left {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        IsolatedRoot { lo, hi }
    }
}

/// Eigenvalues of `M` as isolated roots of its characteristic polynomial,
/// descending.
pub fn exact_eigenvalues(matrix: &Matrix<Rational>, tol: &Rational) -> Result<Vec<IsolatedRoot>> {
    let mut roots = isolate_real_roots(&char_poly(matrix)?, tol)?;
    roots.reverse();
    Ok(roots)
}
