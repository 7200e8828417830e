use crate::bd::BdFactorization;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::Rational;
use crate::scalar::Scalar;

/// Outcome of an exchange-free Neville elimination.
#[derive(Clone, Debug)]
pub struct NevilleRecord {
    /// `p_ij = a_ij^(j)` for `i ≥ j` (0-based storage, zero above the diagonal).
    pub pivots: Matrix<Rational>,
    /// `m_ij = p_ij / p_{i−1,j}` for `i > j`, zero when `p_{i−1,j} = p_ij = 0`.
    pub multipliers: Matrix<Rational>,
    /// `A_1, …, A_N` when requested.
    pub stages: Option<Vec<Matrix<Rational>>>,
    pub exchange_free: bool,
}

impl NevilleRecord {
    /// The final upper triangular matrix `U = A_N`.
    pub fn upper(&self) -> Matrix<Rational> {
        let n = self.pivots.rows();
        let mut u = Matrix::zeros(n, n);
        if let Some(stages) = &self.stages {
            return stages.last().cloned().unwrap_or(u);
        }
        for i in 0..n {
            u[(i, i)] = self.pivots[(i, i)].clone();
        }
        u
    }
}

/// Neville elimination (each row reduced by a multiple of the row above)
/// without row exchanges.
pub fn neville_eliminate(matrix: &Matrix<Rational>, keep_stages: bool) -> Result<NevilleRecord> {
    let (_, record) = eliminate(matrix, keep_stages)?;
    Ok(record)
}

fn eliminate(matrix: &Matrix<Rational>, keep_stages: bool) -> Result<(Matrix<Rational>, NevilleRecord)> {
    let n = matrix.order()?;
    let mut a = matrix.clone();
    let mut pivots = Matrix::zeros(n, n);
    let mut multipliers = Matrix::zeros(n, n);
    let mut stages = keep_stages.then(|| vec![a.clone()]);
    for t in 0..n {
        for i in t..n {
            pivots[(i, t)] = a[(i, t)].clone();
        }
        if t + 1 == n {
            break;
        }
        // Bottom-up so each row sees its predecessor from the previous stage.
        for i in ((t + 1)..n).rev() {
            let below = a[(i, t)].clone();
            let above = a[(i - 1, t)].clone();
            if below.is_zero() {
                continue;
            }
            if above.is_zero() {
                return Err(Error::ExchangeRequired { step: t + 1 });
            }
            let m = &below / &above;
            for j in t..n {
                let delta = &m * &a[(i - 1, j)];
                a[(i, j)] = &a[(i, j)] - &delta;
            }
            multipliers[(i, t)] = m;
        }
        if let Some(s) = stages.as_mut() {
            s.push(a.clone());
        }
    }
    Ok((
        a,
        NevilleRecord {
            pivots,
            multipliers,
            stages,
            exchange_free: true,
        },
    ))
}

/// Complete Neville elimination packaged as `BD(A)`: multipliers of `A`
/// below the diagonal, diagonal pivots, and the multipliers obtained by
/// eliminating `Uᵀ` above the diagonal.
pub fn neville_bd(matrix: &Matrix<Rational>) -> Result<(NevilleRecord, BdFactorization<Rational>)> {
    let (upper, record) = eliminate(matrix, false)?;
    let (_, transposed) = eliminate(&upper.transpose(), false)?;
    let n = upper.rows();
    let mut b = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            b[(i, j)] = match i.cmp(&j) {
                std::cmp::Ordering::Greater => record.multipliers[(i, j)].clone(),
                std::cmp::Ordering::Equal => record.pivots[(i, i)].clone(),
                std::cmp::Ordering::Less => transposed.multipliers[(j, i)].clone(),
            };
        }
    }
    Ok((record, BdFactorization::from_matrix(b)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn two_by_two_by_hand() {
        let a = Matrix::from_rows(vec![vec![q(3, 4), q(1, 4)], vec![q(1, 2), q(1, 2)]]).unwrap();
        let (rec, bd) = neville_bd(&a).unwrap();
        assert_eq!(*bd.multiplier(2, 1), q(2, 3));
        assert_eq!(*bd.transpose_multiplier(2, 1), q(1, 3));
        assert_eq!(bd.pivots(), vec![q(3, 4), q(1, 3)]);
        assert_eq!(rec.multipliers[(1, 0)], q(2, 3));
        assert_eq!(rec.pivots[(1, 0)], q(1, 2));
    }

    #[test]
    fn identity_is_vacuous() {
        let (_, bd) = neville_bd(&Matrix::<Rational>::identity(4)).unwrap();
        assert_eq!(*bd.entries(), Matrix::identity(4));
    }

    #[test]
    fn zero_pivot_needs_exchange() {
        let a = Matrix::from_rows(vec![vec![q(0, 1), q(1, 1)], vec![q(1, 1), q(0, 1)]]).unwrap();
        assert!(matches!(neville_eliminate(&a, false), Err(Error::ExchangeRequired { step: 1 })));
    }

    #[test]
    fn stages_end_upper_triangular() {
        let a = Matrix::from_fn(4, 4, |i, j| q(1, (i + j + 1) as i64));
        let rec = neville_eliminate(&a, true).unwrap();
        let stages = rec.stages.as_ref().unwrap();
        assert_eq!(stages.len(), 4);
        let u = rec.upper();
        for i in 0..4 {
            for j in 0..i {
                assert!(u[(i, j)].is_zero());
            }
            assert_eq!(u[(i, i)], rec.pivots[(i, i)]);
        }
    }
}
