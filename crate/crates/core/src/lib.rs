//! Accurate computations with Said–Ball–Vandermonde matrices.
//!
//! The SB–Vandermonde matrix of nodes `0 < t₁ < … < t_{n+1} < 1` is the
//! collocation matrix of the Said–Ball basis of degree `n`. It is strictly
//! totally positive, and its bidiagonal decomposition `BD(A)` can be
//! computed straight from the nodes with high relative accuracy. This crate
//! provides:
//!
//! - [`basis`]: the Said–Ball basis, polynomial evaluation and the dense matrix
//! - [`bd`]: the O(n²) subtraction-safe decomposition and its closed forms
//! - [`tn_ops`]: solves, reconstruction and interpolation from `BD(A)`
//! - [`eigen`]: spectrum via subtraction-free reconstruction plus shifted QR
//! - [`oracle`]: exact rational ground truth (Neville elimination, solves,
//!   characteristic polynomials with certified root isolation, κ₂)
//!
//! Every kernel is generic over [`Scalar`], so the same code runs in `f64`,
//! in exact [`Rational`] arithmetic, or under the [`audit::Audited`] scalar
//! that records every subtraction for a cancellation audit.

#![forbid(unsafe_code)]

pub mod audit;
pub mod basis;
pub mod bd;
pub mod eigen;
mod error;
pub mod io;
pub mod matrix;
pub mod oracle;
pub mod rational;
pub mod scalar;
pub mod tn_ops;

pub use basis::{build_matrix, eval_basis, eval_poly, NodeSet, Parity};
pub use bd::{decompose, determinant_closed_form, multiplier, pivot, transpose_multiplier, BdFactorization};

pub use eigen::{eigenvalues, qr_eigen, Spectrum};
pub use error::{Error, Result};
pub use matrix::Matrix;
pub use rational::{parse_scalar, Rational};
pub use scalar::Scalar;
pub use tn_ops::{interpolate, reconstruct, solve, solve_vector, Interpolant, SolveReport};

