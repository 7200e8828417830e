//! Eigenvalues of an SB–Vandermonde matrix from its `BD(A)`.
//!
//! The matrix is rebuilt from the factors without subtractions, so every
//! entry is accurate to a few ulps, and then handed to a Hessenberg
//! shifted-QR eigensolver. The QR stage is only backward stable: tiny
//! eigenvalues carry absolute errors of order `u·λ₁`.

use crate::bd::BdFactorization;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::oracle::IsolatedRoot;
use crate::rational::Rational;
use crate::scalar::Scalar;
use crate::tn_ops::reconstruct;

/// Iterations allowed per eigenvalue before giving up.
pub const MAX_ITERATIONS_PER_EIGENVALUE: usize = 100;

/// Eigenvalues in descending order.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub values: Vec<f64>,
    /// `|λ − λ_e| / λ_e` per eigenvalue, when checked against the oracle.
    pub relative_errors: Option<Vec<f64>>,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Attaches per-eigenvalue relative errors; `reference` must be
    /// descending like `values`.
    pub fn with_reference(mut self, reference: &[IsolatedRoot]) -> Result<Self> {
        if reference.len() != self.values.len() {
            return Err(Error::LengthMismatch {
                expected: reference.len(),
                actual: self.values.len(),
            });
        }
        let errs = self
            .values
            .iter()
            .zip(reference)
            .map(|(v, r)| {
                let exact = r.midpoint();
                let v = Rational::from_f64(*v).expect("finite eigenvalue");
                (&(&v - &exact) / &exact).abs_value().to_f64()
            })
            .collect();
        self.relative_errors = Some(errs);
        Ok(self)
    }
}

/// Spectrum of the matrix represented by `bd`.
pub fn eigenvalues<S: Scalar>(bd: &BdFactorization<S>) -> Result<Spectrum> {
    let a = reconstruct(bd).map(|x| x.to_f64());
    let mut values = qr_eigen(&a)?;
    values.sort_by(|a, b| b.total_cmp(a));
    if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !(**v > 0.0)) {
        return Err(Error::NonPositiveEigenvalue { index, value });
    }
    Ok(Spectrum {
        values,
        relative_errors: None,
    })
}

/// Householder reduction to upper Hessenberg form (similarity transform).
pub fn hessenberg(a: &Matrix<f64>) -> Result<Matrix<f64>> {
    let n = a.order()?;
    let mut h = a.clone();
    for k in 0..n.saturating_sub(2) {
        let alpha_sq: f64 = ((k + 1)..n).map(|i| h[(i, k)] * h[(i, k)]).sum();
        let tail: f64 = ((k + 2)..n).map(|i| h[(i, k)] * h[(i, k)]).sum();
        if tail == 0.0 {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let alpha = -x0.signum() * alpha_sq.sqrt();
        let mut v: Vec<f64> = ((k + 1)..n).map(|i| h[(i, k)]).collect();
        v[0] -= alpha;
        let vnorm_sq: f64 = v.iter().map(|x| x * x).sum();
        // H ← P H P with P = I − 2vvᵀ/(vᵀv) acting on rows/cols k+1..n.
        for j in 0..n {
            let dot: f64 = v.iter().enumerate().map(|(r, vr)| vr * h[(k + 1 + r, j)]).sum();
            let f = 2.0 * dot / vnorm_sq;
            for (r, vr) in v.iter().enumerate() {
                h[(k + 1 + r, j)] -= f * vr;
            }
        }
        for i in 0..n {
            let dot: f64 = v.iter().enumerate().map(|(c, vc)| vc * h[(i, k + 1 + c)]).sum();
            let f = 2.0 * dot / vnorm_sq;
            for (c, vc) in v.iter().enumerate() {
                h[(i, k + 1 + c)] -= f * vc;
            }
        }
        h[(k + 1, k)] = alpha;
        for i in (k + 2)..n {
            h[(i, k)] = 0.0;
        }
    }
    Ok(h)
}

/// Real eigenvalues of a 2×2 block, or `None` when they are complex.
fn block_eigenvalues(a: f64, b: f64, c: f64, d: f64) -> Option<(f64, f64)> {
    let half_tr = 0.5 * (a + d);
    let half_diff = 0.5 * (a - d);
    let disc = half_diff * half_diff + b * c;
    if disc < 0.0 {
        return None;
    }
    let root = disc.sqrt();
    let big = if half_tr >= 0.0 { half_tr + root } else { half_tr - root };
    let small = if big != 0.0 { (a * d - b * c) / big } else { half_tr - root };
    Some((big, small))
}

/// Eigenvalues of a real matrix with real spectrum by Wilkinson-shifted
/// QR on its Hessenberg form, with deflation.
pub fn qr_eigen(m: &Matrix<f64>) -> Result<Vec<f64>> {
    let n = m.order()?;
    let mut h = hessenberg(m)?;
    let mut eig = vec![0.0; n];
    let mut hi = n;
    let mut iters = 0usize;
    while hi > 0 {
        let last = hi - 1;
        // Deflate from the bottom: find the start of the unreduced block.
        let mut lo = last;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].abs();
            if sub <= f64::EPSILON * (h[(lo - 1, lo - 1)].abs() + h[(lo, lo)].abs()) {
                h[(lo, lo - 1)] = 0.0;
                break;
            }
            lo -= 1;
        }
        if lo == last {
            eig[last] = h[(last, last)];
            hi -= 1;
            iters = 0;
            continue;
        }
        if iters >= MAX_ITERATIONS_PER_EIGENVALUE {
            return Err(Error::NoConvergence {
                index: last,
                iterations: iters,
            });
        }
        let (a, b, c, d) = (h[(last - 1, last - 1)], h[(last - 1, last)], h[(last, last - 1)], h[(last, last)]);
        let trailing = block_eigenvalues(a, b, c, d);
        if lo + 1 == last && trailing.is_none() {
            return Err(Error::ComplexPair { index: last });
        }
        iters += 1;
        let shift = match trailing {
            _ if iters % 11 == 0 => d + h[(last, last - 1)].abs(),
            Some((x, y)) => {
                if (x - d).abs() < (y - d).abs() {
                    x
                } else {
                    y
                }
            }
            None => d,
        };
        qr_step(&mut h, lo, hi, shift);
    }
    Ok(eig)
}

/// One explicit shifted QR step `H − μI = QR`, `H ← RQ + μI` on the
/// window `lo..hi`, using Givens rotations.
fn qr_step(h: &mut Matrix<f64>, lo: usize, hi: usize, shift: f64) {
    let n = h.rows();
    for k in lo..hi {
        h[(k, k)] -= shift;
    }
    let mut rotations = Vec::with_capacity(hi - lo);
    for k in lo..(hi - 1) {
        let (x, y) = (h[(k, k)], h[(k + 1, k)]);
        let r = x.hypot(y);
        let (c, s) = if r == 0.0 { (1.0, 0.0) } else { (x / r, y / r) };
        for j in k..n {
            let (u, v) = (h[(k, j)], h[(k + 1, j)]);
            h[(k, j)] = c * u + s * v;
            h[(k + 1, j)] = -s * u + c * v;
        }
        rotations.push((c, s));
    }
    for (idx, (c, s)) in rotations.into_iter().enumerate() {
        let k = lo + idx;
        for i in 0..(k + 2).min(hi) {
            let (u, v) = (h[(i, k)], h[(i, k + 1)]);
            h[(i, k)] = c * u + s * v;
            h[(i, k + 1)] = -s * u + c * v;
        }
    }
    for k in lo..hi {
        h[(k, k)] += shift;
    }
}
