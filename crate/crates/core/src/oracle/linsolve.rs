use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::Rational;
use crate::scalar::Scalar;

/// Row-echelon reduction with the first nonzero pivot in each column.
/// Returns the reduced augmented matrix and the sign of the permutation.
fn reduce(mut a: Matrix<Rational>, rhs_cols: usize) -> Result<(Matrix<Rational>, i32)> {
    let n = a.rows();
    let width = n + rhs_cols;
    let mut sign = 1;
    for k in 0..n {
        let p = (k..n).find(|&i| !a[(i, k)].is_zero()).ok_or(Error::Singular)?;
        if p != k {
            for j in 0..width {
                let tmp = a[(k, j)].clone();
                a[(k, j)] = a[(p, j)].clone();
                a[(p, j)] = tmp;
            }
            sign = -sign;
        }
        for i in (k + 1)..n {
            if a[(i, k)].is_zero() {
                continue;
            }
            let f = &a[(i, k)] / &a[(k, k)];
            for j in k..width {
                let d = &f * &a[(k, j)];
                a[(i, j)] = &a[(i, j)] - &d;
            }
        }
    }
    Ok((a, sign))
}

/// Exact solution of `M x = b` by rational Gaussian elimination.
pub fn exact_solve(matrix: &Matrix<Rational>, b: &[Rational]) -> Result<Vec<Rational>> {
    let n = matrix.order()?;
    if b.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: b.len(),
        });
    }
    let aug = Matrix::from_fn(n, n + 1, |i, j| if j < n { matrix[(i, j)].clone() } else { b[i].clone() });
    let (r, _) = reduce(aug, 1)?;
    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = r[(i, n)].clone();
        for j in (i + 1)..n {
            acc = &acc - &(&r[(i, j)] * &x[j]);
        }
        x[i] = &acc / &r[(i, i)];
    }
    Ok(x)
}

/// Exact determinant by Gaussian elimination.
pub fn exact_determinant(matrix: &Matrix<Rational>) -> Result<Rational> {
    matrix.order()?;
    match reduce(matrix.clone(), 0) {
        Ok((r, sign)) => {
            let d = (0..r.rows()).fold(Rational::one(), |acc, i| &acc * &r[(i, i)]);
            Ok(if sign < 0 { -d } else { d })
        }
        Err(Error::Singular) => Ok(Rational::zero()),
        Err(e) => Err(e),
    }
}
