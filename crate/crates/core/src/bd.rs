//! `BD(A)` of an SB–Vandermonde matrix, computed from the nodes alone.
//!
//! The compact array `B` holds, with 1-based indices,
//! `B[i][j] = m_ij` (i > j), `B[i][i] = p_ii` and `B[i][j] = m̃_ji` (i < j),
//! where `m` are the Neville multipliers of `A`, `m̃` those of `Aᵀ` and
//! `p_ii` the diagonal pivots.
//!
//! [`decompose`] uses ratio recurrences in O(n²) operations whose only
//! subtractions are `t_i − t_j` (i > j) and `1 − t_k`. [`multiplier`],
//! [`transpose_multiplier`] and [`pivot`] evaluate the closed forms entry by
//! entry and serve as an independent route.

use num::bigint::BigInt;
use num::One;

use crate::basis::{binomial_scalar, pow_by_mul, NodeSet, Parity};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::{binomial, Rational};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct BdFactorization<S> {
    parity: Parity,
    entries: Matrix<S>,
}

impl<S: Scalar> BdFactorization<S> {
    /// Wraps a compact BD array. Parity follows from the order.
    pub fn from_matrix(entries: Matrix<S>) -> Result<Self> {
        let order = entries.order()?;
        if order == 0 {
            return Err(Error::InvalidBd("empty array".into()));
        }
        Ok(Self {
            parity: Parity::of_degree(order - 1),
            entries,
        })
    }

    pub fn order(&self) -> usize {
        self.entries.rows()
    }

    pub fn degree(&self) -> usize {
        self.order() - 1
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn entries(&self) -> &Matrix<S> {
        &self.entries
    }

    pub fn into_entries(self) -> Matrix<S> {
        self.entries
    }

    /// `m_ij`, 1-based, `i > j`.
    pub fn multiplier(&self, i: usize, j: usize) -> &S {
        debug_assert!(j < i);
        &self.entries[(i - 1, j - 1)]
    }

    /// `m̃_ij`, 1-based, `i > j`.
    pub fn transpose_multiplier(&self, i: usize, j: usize) -> &S {
        debug_assert!(j < i);
        &self.entries[(j - 1, i - 1)]
    }

    /// `p_ii`, 1-based.
    pub fn pivot(&self, i: usize) -> &S {
        &self.entries[(i - 1, i - 1)]
    }

    pub fn pivots(&self) -> Vec<S> {
        (1..=self.order()).map(|i| self.pivot(i).clone()).collect()
    }

    pub fn is_strictly_positive(&self) -> bool {
        let zero = S::zero();
        self.entries.as_slice().iter().all(|x| *x > zero)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> BdFactorization<T> {
        BdFactorization {
            parity: self.parity,
            entries: self.entries.map(f),
        }
    }
}

/// Computes `BD(A)` from the nodes in O(n²) operations.
pub fn decompose<S: Scalar>(nodes: &NodeSet<S>) -> BdFactorization<S> {
    let n = nodes.degree();
    let order = n + 1;
    let mut b = Matrix::<S>::zeros(order, order);
    if n == 0 {
        b[(0, 0)] = S::one();
        return BdFactorization {
            parity: Parity::Even,
            entries: b,
        };
    }

    let h = n / 2;
    let s = n - h; // last column of the first multiplier branch
    let even = n % 2 == 0;
    let t = |k: usize| nodes.t(k).clone();
    let diff = |i: usize, j: usize| t(i) - t(j);
    // 1 − t_k and (1 − t_k)^(h+1), once per node; index 0 unused.
    let om: Vec<S> = std::iter::once(S::zero())
        .chain(nodes.as_slice().iter().map(|x| S::one() - x.clone()))
        .collect();
    let om_e: Vec<S> = om.iter().map(|x| pow_by_mul(x, h + 1)).collect();

    // b is 0-based; the recurrences below use 1-based indices.
    // Multipliers of A, stored below the diagonal.
    for i in 2..=order {
        b[(i - 1, 0)] = om_e[i].clone() / om_e[i - 1].clone();
        for j in 1..=(i - 2).min(s - 1) {
            b[(i - 1, j)] = diff(i, i - j) / diff(i - 1, i - j - 1) * b[(i - 1, j - 1)].clone();
        }
    }
    for i in (s + 2)..=order {
        let ratio = om[i - s - 1].clone() * diff(i, i - s) / (om[i].clone() * diff(i - 1, i - s - 1));
        b[(i - 1, s)] = ratio * b[(i - 1, s - 1)].clone();
        for j in (s + 1)..=(i - 2) {
            let num = om[i - 1].clone() * om[i - j - 1].clone() * diff(i, i - j);
            let den = om[i].clone() * om[i - j].clone() * diff(i - 1, i - j - 1);
            b[(i - 1, j)] = num / den * b[(i - 1, j - 1)].clone();
        }
    }

    // Multipliers of Aᵀ, stored above the diagonal.
    let mut set_mt = |i: usize, j: usize, v: S| b[(j - 1, i - 1)] = v;
    for i in 2..=s {
        let aux = S::from_ratio((h + i - 1) as i64, (i - 1) as i64);
        for j in 1..i {
            set_mt(i, j, aux.clone() * t(j));
        }
    }
    let lead = if even { S::from_int(2) } else { S::one() };
    let mut prev = lead * t(1) / om[1].clone();
    set_mt(s + 1, 1, prev.clone());
    for j in 1..s {
        prev = t(j + 1) / (t(j) * om[j + 1].clone()) * prev;
        set_mt(s + 1, j + 1, prev.clone());
    }
    for i in (s + 2)..=order {
        let aux = S::from_ratio((n + 2 - i) as i64, (h + n + 2 - i) as i64);
        for j in 1..i {
            let int = if j + h + 2 <= i {
                S::one() / om[j].clone()
            } else {
                t(j) / om[j].clone()
            };
            set_mt(i, j, aux.clone() * int);
        }
    }

    // Diagonal pivots.
    let mut set_p = |i: usize, v: S| b[(i - 1, i - 1)] = v;
    let gaps = |i: usize| (1..i).fold(S::one(), |acc, k| diff(i, k) * acc);
    set_p(1, om_e[1].clone());
    let mut q = S::one();
    for i in 1..s {
        q = S::from_ratio((h + i) as i64, i as i64) * q;
        set_p(i + 1, q.clone() * om_e[i + 1].clone() * gaps(i + 1));
    }
    let head = (1..=s).fold(S::one(), |acc, k| om[k].clone() * acc);
    q = q / head;
    if even {
        q = S::from_int(2) * q;
    }
    set_p(s + 1, q.clone() * pow_by_mul(&om[s + 1], n - s) * gaps(s + 1));
    for i in (s + 1)..=n {
        q = S::from_ratio((n - i + 1) as i64, (h + n - i + 1) as i64) / om[i].clone() * q;
        set_p(i + 1, q.clone() * pow_by_mul(&om[i + 1], n - i) * gaps(i + 1));
    }

    BdFactorization {
        parity: nodes.parity(),
        entries: b,
    }
}

fn check_pair(n: usize, i: usize, j: usize, what: &'static str) -> Result<()> {
    if 1 <= j && j < i && i <= n + 1 {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange {
            what,
            index: format!("({i}, {j})"),
            valid: format!("1 <= j < i <= {}", n + 1),
        })
    }
}

/// Closed form of the Neville multiplier `m_ij` of `A` (1-based, `i > j`).
pub fn multiplier<S: Scalar>(nodes: &NodeSet<S>, i: usize, j: usize) -> Result<S> {
    let n = nodes.degree();
    check_pair(n, i, j, "multiplier")?;
    let h = n / 2;
    let t = |k: usize| nodes.t(k).clone();
    let om = |k: usize| S::one() - t(k);
    let num = (1..j).fold(S::one(), |acc, k| acc * (t(i) - t(i - k)));
    let den = (2..=j).fold(S::one(), |acc, k| acc * (t(i - 1) - t(i - k)));
    Ok(if j <= n - h {
        pow_by_mul(&om(i), h + 1) * num / (pow_by_mul(&om(i - 1), h + 1) * den)
    } else {
        pow_by_mul(&om(i), n - j + 1) * om(i - j) * num / (pow_by_mul(&om(i - 1), n - j + 2) * den)
    })
}

/// Closed form of the Neville multiplier `m̃_ij` of `Aᵀ` (1-based, `i > j`).
pub fn transpose_multiplier<S: Scalar>(nodes: &NodeSet<S>, i: usize, j: usize) -> Result<S> {
    let n = nodes.degree();
    check_pair(n, i, j, "transpose multiplier")?;
    let h = n / 2;
    let s = n - h;
    let t = |k: usize| nodes.t(k).clone();
    let om = |k: usize| S::one() - t(k);
    Ok(if i <= s {
        S::from_ratio((h + i - 1) as i64, (i - 1) as i64) * t(j)
    } else if i == s + 1 {
        let lead = if n % 2 == 0 { S::from_int(2) } else { S::one() };
        lead * t(j) / (1..=j).fold(S::one(), |acc, k| acc * om(k))
    } else {
        let aux = S::from_ratio((n + 2 - i) as i64, (h + n + 2 - i) as i64);
        if j + h + 2 <= i {
            aux / om(j)
        } else {
            aux * t(j) / om(j)
        }
    })
}

/// Closed form of the diagonal pivot `p_ii` (1-based).
pub fn pivot<S: Scalar>(nodes: &NodeSet<S>, i: usize) -> Result<S> {
    let n = nodes.degree();
    if i == 0 || i > n + 1 {
        return Err(Error::IndexOutOfRange {
            what: "pivot",
            index: i.to_string(),
            valid: format!("1..={}", n + 1),
        });
    }
    if n == 0 {
        return Ok(S::one());
    }
    let h = n / 2;
    let t = |k: usize| nodes.t(k).clone();
    let om = |k: usize| S::one() - t(k);
    let gaps = (1..i).fold(S::one(), |acc, k| acc * (t(i) - t(k)));
    Ok(if i <= n - h {
        binomial_scalar::<S>(h + i - 1, i - 1) * pow_by_mul(&om(i), h + 1) * gaps
    } else {
        let head = (1..i).fold(S::one(), |acc, k| acc * om(k));
        binomial_scalar::<S>(h + n + 1 - i, n + 1 - i) * pow_by_mul(&om(i), n + 1 - i) * gaps / head
    })
}

/// The squared binomial prefactor of the determinant, exactly.
fn determinant_prefactor(n: usize) -> BigInt {
    let h = n / 2;
    let top = if n % 2 == 1 { h + 1 } else { h };
    let half = (0..top).fold(BigInt::one(), |acc, k| acc * binomial((h + k) as u64, k as u64));
    let central = if n % 2 == 0 { binomial(n as u64, h as u64) } else { BigInt::one() };
    &half * &half * central
}

/// `det A` as prefactor times `Π_{i<j} (t_j − t_i)`.
pub fn determinant_closed_form<S: Scalar>(nodes: &NodeSet<S>) -> S {
    let t = nodes.as_slice();
    let mut det = S::from_rational(&Rational::from(determinant_prefactor(nodes.degree())));
    for j in 1..t.len() {
        for i in 0..j {
            det = det * (t[j].clone() - t[i].clone());
        }
    }
    det
}

/// Product of the diagonal pivots of a BD array.
pub fn determinant_from_pivots<S: Scalar>(bd: &BdFactorization<S>) -> S {
    bd.pivots().into_iter().fold(S::one(), |acc, p| acc * p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn nodes(v: &[(i64, i64)]) -> NodeSet<Rational> {
        NodeSet::new(v.iter().map(|&(a, b)| q(a, b)).collect()).unwrap()
    }

    #[test]
    fn two_by_two_closed_form() {
        let x = nodes(&[(1, 4), (1, 2)]);
        let bd = decompose(&x);
        assert_eq!(*bd.multiplier(2, 1), q(2, 3));
        assert_eq!(*bd.transpose_multiplier(2, 1), q(1, 3));
        assert_eq!(bd.pivots(), vec![q(3, 4), q(1, 3)]);
        assert_eq!(bd.entries().to_rows(), vec![vec![q(3, 4), q(1, 3)], vec![q(2, 3), q(1, 3)]]);
        assert_eq!(multiplier(&x, 2, 1).unwrap(), q(2, 3));
        assert_eq!(transpose_multiplier(&x, 2, 1).unwrap(), q(1, 3));
        assert_eq!(pivot(&x, 1).unwrap(), q(3, 4));
        assert_eq!(determinant_closed_form(&x), q(1, 4));
    }

    #[test]
    fn cubic_hand_values() {
        let x = nodes(&[(1, 5), (2, 5), (3, 5), (4, 5)]);
        let bd = decompose(&x);
        assert_eq!(*bd.multiplier(2, 1), q(9, 16));
        assert_eq!(*bd.multiplier(3, 2), q(4, 9));
        assert_eq!(*bd.transpose_multiplier(3, 1), q(1, 4));
        assert_eq!(*bd.transpose_multiplier(3, 2), q(5, 6));
        assert_eq!(*bd.transpose_multiplier(2, 1), q(2, 5));
        assert_eq!(*bd.pivot(1), q(16, 25));
        assert_eq!(*bd.pivot(2), q(18, 125));
        assert_eq!(multiplier(&x, 3, 2).unwrap(), q(4, 9));
        assert_eq!(transpose_multiplier(&x, 3, 2).unwrap(), q(5, 6));
        assert_eq!(transpose_multiplier(&x, 2, 1).unwrap(), q(2, 5));
        assert_eq!(pivot(&x, 2).unwrap(), q(18, 125));
    }

    #[test]
    fn quadratic_determinant() {
        let x = nodes(&[(1, 4), (1, 2), (3, 4)]);
        assert_eq!(determinant_closed_form(&x), q(1, 16));
        assert_eq!(determinant_from_pivots(&decompose(&x)), q(1, 16));
    }

    #[test]
    fn single_node() {
        let x = nodes(&[(1, 3)]);
        let bd = decompose(&x);
        assert_eq!(bd.entries().to_rows(), vec![vec![q(1, 1)]]);
        assert_eq!(pivot(&x, 1).unwrap(), q(1, 1));
        assert_eq!(determinant_closed_form(&x), q(1, 1));
    }

    #[test]
    fn closed_forms_reject_bad_indices() {
        let x = nodes(&[(1, 5), (2, 5), (3, 5)]);
        assert!(multiplier(&x, 2, 2).is_err());
        assert!(multiplier(&x, 4, 1).is_err());
        assert!(transpose_multiplier(&x, 1, 0).is_err());
        assert!(pivot(&x, 0).is_err());
        assert!(pivot(&x, 4).is_err());
    }

    #[test]
    fn prefactors() {
        assert_eq!(determinant_prefactor(1), BigInt::from(1));
        assert_eq!(determinant_prefactor(2), BigInt::from(2));
        // [C(1,0) C(2,1)]² = 4
        assert_eq!(determinant_prefactor(3), BigInt::from(4));
        // [C(2,0) C(3,1)]² · C(4,2) = 54
        assert_eq!(determinant_prefactor(4), BigInt::from(54));
    }
}
