//! Error measures of floating results against exact references.

use crate::bd::BdFactorization;
use crate::eigen::qr_eigen;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::Rational;
use crate::scalar::Scalar;

fn exact_of<S: Scalar>(x: &S) -> Result<Rational> {
    x.to_rational()
        .ok_or_else(|| Error::Format(format!("non-finite value {x:?}")))
}

/// `‖M‖₂` as `√λ_max(MᵀM)`; relative accuracy near machine precision.
pub fn spectral_norm(m: &Matrix<f64>) -> Result<f64> {
    let scale = m.as_slice().iter().fold(0.0f64, |a, x| a.max(x.abs()));
    if scale == 0.0 {
        return Ok(0.0);
    }
    let s = m.map(|x| x / scale);
    let gram = s.transpose().matmul(&s)?;
    let top = qr_eigen(&gram)?.into_iter().fold(0.0f64, f64::max);
    Ok(scale * top.sqrt())
}

/// `‖B − B_e‖₂ / ‖B_e‖₂` over the compact BD arrays. The difference is
/// formed exactly before rounding.
pub fn bd_norm_error<S: Scalar>(computed: &BdFactorization<S>, exact: &BdFactorization<Rational>) -> Result<f64> {
    let (c, e) = (computed.entries(), exact.entries());
    if c.rows() != e.rows() {
        return Err(Error::LengthMismatch {
            expected: e.rows(),
            actual: c.rows(),
        });
    }
    let n = e.rows();
    let mut diff = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            diff[(i, j)] = (&exact_of(&c[(i, j)])? - &e[(i, j)]).to_f64();
        }
    }
    Ok(spectral_norm(&diff)? / spectral_norm(&e.map(|x| x.to_f64()))?)
}

/// `max |c − e| / |e|` entrywise; entries equal to zero must match exactly.
pub fn max_componentwise_error<S: Scalar>(computed: &[S], exact: &[Rational]) -> Result<f64> {
    if computed.len() != exact.len() {
        return Err(Error::LengthMismatch {
            expected: exact.len(),
            actual: computed.len(),
        });
    }
    let mut worst = 0.0f64;
    for (c, e) in computed.iter().zip(exact) {
        let d = &exact_of(c)? - e;
        let err = if e.is_zero() {
            if d.is_zero() { 0.0 } else { f64::INFINITY }
        } else {
            (&d / e).abs_value().to_f64()
        };
        worst = worst.max(err);
    }
    Ok(worst)
}
