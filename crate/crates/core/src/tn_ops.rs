//! Linear algebra driven by the bidiagonal factors in `BD(A)`.
//!
//! With `F_i`, `G_i` built from the same array, the inverse factorization
//! `A⁻¹ = G_1⋯G_n D⁻¹ F_n⋯F_1` has off-diagonals `−m_{k,i}`, `−m̃_{k,i}`,
//! while the direct one `A = F_n⋯F_1 D G_1⋯G_n` places `m_{k,k−i}`,
//! `m̃_{k,k−i}` on the k-th sub/superdiagonal slot of factor `i`. The two
//! families are not inverses of each other.

use crate::basis::{eval_poly, NodeSet};
use crate::bd::{decompose, BdFactorization};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::Rational;
use crate::scalar::{compensated_sum, norm2, Scalar};

/// A solution with its quality measures.
#[derive(Clone, Debug, PartialEq)]
pub struct SolveReport<S> {
    pub x: Vec<S>,
    /// `‖Ax − b‖₂` with `A` reconstructed from the factors.
    pub residual_norm: f64,
    /// `‖x − x_e‖₂ / ‖x_e‖₂`, present only when a reference was supplied.
    pub relative_error: Option<f64>,
}

impl<S: Scalar> SolveReport<S> {
    pub fn with_reference(mut self, exact: &[Rational]) -> Result<Self> {
        self.relative_error = Some(relative_error(&self.x, exact)?);
        Ok(self)
    }
}

/// `‖x − x_e‖₂ / ‖x_e‖₂`, with the differences formed exactly.
pub fn relative_error<S: Scalar>(x: &[S], exact: &[Rational]) -> Result<f64> {
    if x.len() != exact.len() {
        return Err(Error::LengthMismatch {
            expected: exact.len(),
            actual: x.len(),
        });
    }
    let mut diffs = Vec::with_capacity(x.len());
    for (xi, ei) in x.iter().zip(exact) {
        let xi = xi.to_rational().ok_or_else(|| Error::Format("non-finite solution entry".into()))?;
        diffs.push((&xi - ei).to_f64());
    }
    let reference: Vec<f64> = exact.iter().map(Rational::to_f64).collect();
    Ok(norm2(&diffs) / norm2(&reference))
}

/// `A⁻¹ b` by applying the inverse factors right to left in O(n²).
pub fn solve_vector<S: Scalar>(bd: &BdFactorization<S>, b: &[S]) -> Result<Vec<S>> {
    let order = bd.order();
    if b.len() != order {
        return Err(Error::LengthMismatch {
            expected: order,
            actual: b.len(),
        });
    }
    let n = order - 1;
    let mut x = b.to_vec();
    // F_1 first; descending k keeps x[k−1] at its previous value.
    for i in 1..=n {
        for k in ((i + 1)..=order).rev() {
            x[k - 1] = x[k - 1].clone() - bd.multiplier(k, i).clone() * x[k - 2].clone();
        }
    }
    for (k, xk) in x.iter_mut().enumerate() {
        let p = bd.pivot(k + 1).clone();
        if p.is_zero() {
            return Err(Error::InvalidBd(format!("zero pivot p{0}{0}", k + 1)));
        }
        *xk = xk.clone() / p;
    }
    // G_n first; ascending k keeps x[k] at its previous value.
    for i in (1..=n).rev() {
        for k in (i + 1)..=order {
            x[k - 2] = x[k - 2].clone() - bd.transpose_multiplier(k, i).clone() * x[k - 1].clone();
        }
    }
    Ok(x)
}

/// Solves `Ax = b` from `BD(A)` and reports the residual.
pub fn solve<S: Scalar>(bd: &BdFactorization<S>, b: &[S]) -> Result<SolveReport<S>> {
    let x = solve_vector(bd, b)?;
    // Only inexact scalars can overflow; huge rationals are still exact.
    if !S::EXACT && x.iter().any(|v| !v.to_f64().is_finite()) {
        return Err(Error::NonFinite("solve"));
    }
    let a = reconstruct(bd);
    let residual_norm = residual_norm(&a, &x, b)?;
    if !S::EXACT && !residual_norm.is_finite() {
        return Err(Error::NonFinite("residual"));
    }
    Ok(SolveReport {
        x,
        residual_norm,
        relative_error: None,
    })
}

/// `‖Ax − b‖₂`: exact for exact scalars, compensated sums otherwise.
pub fn residual_norm<S: Scalar>(a: &Matrix<S>, x: &[S], b: &[S]) -> Result<f64> {
    if a.cols() != x.len() || a.rows() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.cols(),
            actual: x.len(),
        });
    }
    let r: Vec<f64> = if S::EXACT {
        let ax = a.matvec(x)?;
        ax.into_iter().zip(b).map(|(l, r)| (l - r.clone()).to_f64()).collect()
    } else {
        (0..a.rows())
            .map(|i| {
                let terms = a.row(i).iter().zip(x).map(|(aij, xj)| aij.to_f64() * xj.to_f64());
                compensated_sum(terms.chain(std::iter::once(-b[i].to_f64())))
            })
            .collect()
    };
    Ok(norm2(&r))
}

/// `A = F_n⋯F_1 D G_1⋯G_n`, using only products and sums of the
/// (positive) BD entries.
pub fn reconstruct<S: Scalar>(bd: &BdFactorization<S>) -> Matrix<S> {
    let order = bd.order();
    let n = order - 1;
    let mut a = Matrix::from_diagonal(&bd.pivots());
    // Right-multiply by G_1, …, G_n: column k gains g_k · column k−1.
    for i in 1..=n {
        for k in ((i + 1)..=order).rev() {
            let g = bd.transpose_multiplier(k, k - i).clone();
            for r in 0..order {
                let v = a[(r, k - 1)].clone() + g.clone() * a[(r, k - 2)].clone();
                a[(r, k - 1)] = v;
            }
        }
    }
    // Left-multiply by F_1, …, F_n: row k gains f_k · row k−1.
    for i in 1..=n {
        for k in ((i + 1)..=order).rev() {
            let f = bd.multiplier(k, k - i).clone();
            for c in 0..order {
                let v = a[(k - 1, c)].clone() + f.clone() * a[(k - 2, c)].clone();
                a[(k - 1, c)] = v;
            }
        }
    }
    a
}

/// Said–Ball coefficients of the interpolant `p(t_i) = b_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Interpolant<S> {
    coefficients: Vec<S>,
}

impl<S: Scalar> Interpolant<S> {
    pub fn coefficients(&self) -> &[S] {
        &self.coefficients
    }

    pub fn into_coefficients(self) -> Vec<S> {
        self.coefficients
    }

    pub fn eval(&self, t: &S) -> S {
        eval_poly(&self.coefficients, t).expect("nonempty coefficients")
    }
}

pub fn interpolate<S: Scalar>(nodes: &NodeSet<S>, values: &[S]) -> Result<Interpolant<S>> {
    let bd = decompose(nodes);
    Ok(Interpolant {
        coefficients: solve_vector(&bd, values)?,
    })
}
