//! The Said–Ball basis of degree `n` on `[0, 1]` and its collocation matrix.
//!
//! With `h = ⌊n/2⌋`:
//!
//! ```text
//! s_i(t) = C(h+i, i)     t^i     (1−t)^(h+1)   for 2i < n
//! s_i(t) = C(n, n/2)     t^(n/2) (1−t)^(n/2)   for 2i = n (even n only)
//! s_i(t) = C(h+n−i, n−i) t^(h+1) (1−t)^(n−i)   for 2i > n
//! ```
//!
//! The SB–Vandermonde matrix is stored rows-by-nodes: `A[i][j] = s_j(t_i)`.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::{binomial, Rational};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of_degree(n: usize) -> Self {
        if n % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
        })
    }
}

/// Interpolation nodes `0 < t₁ < … < t_{n+1} < 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct NodeSet<S> {
    nodes: Vec<S>,
}

impl<S: Scalar> NodeSet<S> {
    pub fn new(nodes: Vec<S>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::EmptyNodes);
        }
        let (zero, one) = (S::zero(), S::one());
        for (i, t) in nodes.iter().enumerate() {
            if !(*t > zero && *t < one) {
                return Err(Error::NodeOutOfRange {
                    index: i + 1,
                    value: format!("{t:?}"),
                });
            }
        }
        for (i, pair) in nodes.windows(2).enumerate() {
            if !(pair[0] < pair[1]) {
                return Err(Error::NodesNotIncreasing {
                    first: i + 1,
                    first_value: format!("{:?}", pair[0]),
                    second: i + 2,
                    second_value: format!("{:?}", pair[1]),
                });
            }
        }
        Ok(Self { nodes })
    }

    /// Sorts before validating; repeated nodes are still rejected.
    pub fn sorted(mut nodes: Vec<S>) -> Result<Self> {
        nodes.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
        Self::new(nodes)
    }

    /// Converts exact nodes, then validates (distinct rationals may round to
    /// the same float).
    pub fn from_rationals(nodes: &[Rational]) -> Result<Self> {
        Self::new(nodes.iter().map(S::from_rational).collect())
    }

    pub fn degree(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn parity(&self) -> Parity {
        Parity::of_degree(self.degree())
    }

    pub fn as_slice(&self) -> &[S] {
        &self.nodes
    }

    /// `t_i`, 1-based.
    pub fn t(&self, i: usize) -> &S {
        &self.nodes[i - 1]
    }
}

/// `x^k` by repeated multiplication.
pub(crate) fn pow_by_mul<S: Scalar>(x: &S, k: usize) -> S {
    match k {
        0 => S::one(),
        _ => (1..k).fold(x.clone(), |acc, _| acc * x.clone()),
    }
}

pub(crate) fn binomial_scalar<S: Scalar>(m: usize, k: usize) -> S {
    S::from_rational(&Rational::from(binomial(m as u64, k as u64)))
}

/// `s_i^n(t)`.
pub fn eval_basis<S: Scalar>(n: usize, i: usize, t: &S) -> Result<S> {
    if i > n {
        return Err(Error::IndexOutOfRange {
            what: "Said-Ball basis index",
            index: i.to_string(),
            valid: format!("0..={n}"),
        });
    }
    let h = n / 2;
    let s = S::one() - t.clone();
    let value = if 2 * i < n {
        binomial_scalar::<S>(h + i, i) * pow_by_mul(t, i) * pow_by_mul(&s, h + 1)
    } else if 2 * i == n {
        binomial_scalar::<S>(n, h) * pow_by_mul(t, h) * pow_by_mul(&s, h)
    } else {
        binomial_scalar::<S>(h + n - i, n - i) * pow_by_mul(t, h + 1) * pow_by_mul(&s, n - i)
    };
    Ok(value)
}

/// `p(t) = Σ a_k s_k^n(t)` with `n = coefficients.len() − 1`.
pub fn eval_poly<S: Scalar>(coefficients: &[S], t: &S) -> Result<S> {
    let n = coefficients.len().checked_sub(1).ok_or(Error::LengthMismatch {
        expected: 1,
        actual: 0,
    })?;
    coefficients
        .iter()
        .enumerate()
        .try_fold(S::zero(), |acc, (k, a)| Ok(acc + a.clone() * eval_basis(n, k, t)?))
}

/// The SB–Vandermonde matrix `A[i][j] = s_j^n(t_i)` (0-based indices).
pub fn build_matrix<S: Scalar>(nodes: &NodeSet<S>) -> Matrix<S> {
    let n = nodes.degree();
    Matrix::from_fn(n + 1, n + 1, |i, j| {
        eval_basis(n, j, &nodes.as_slice()[i]).expect("column index within degree")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn degree_one_is_linear() {
        let t = q(3, 7);
        assert_eq!(eval_basis(1, 0, &t).unwrap(), q(4, 7));
        assert_eq!(eval_basis(1, 1, &t).unwrap(), t);
    }

    #[test]
    fn hand_evaluated_values() {
        assert_eq!(eval_basis(2, 1, &q(1, 2)).unwrap(), q(1, 2));
        assert_eq!(eval_basis(3, 1, &q(1, 2)).unwrap(), q(1, 4));
        assert_eq!(eval_poly(&[q(0, 1), q(1, 1), q(0, 1), q(0, 1)], &q(1, 2)).unwrap(), q(1, 4));
    }

    #[test]
    fn index_out_of_range() {
        assert!(matches!(eval_basis(3, 4, &0.5), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn degree_zero_basis_is_constant() {
        assert_eq!(eval_basis(0, 0, &q(1, 3)).unwrap(), q(1, 1));
    }

    #[test]
    fn two_by_two_matrix() {
        let nodes = NodeSet::new(vec![q(1, 4), q(1, 2)]).unwrap();
        let a = build_matrix(&nodes);
        assert_eq!(a.to_rows(), vec![vec![q(3, 4), q(1, 4)], vec![q(1, 2), q(1, 2)]]);
    }

    #[test]
    fn first_basis_function_is_pure_power() {
        for n in 1..10usize {
            let t = q(2, 9);
            let ones: Vec<Rational> = std::iter::once(q(1, 1)).chain(std::iter::repeat(q(0, 1)).take(n)).collect();
            let expected = pow_by_mul(&(q(1, 1) - t.clone()), n / 2 + 1);
            assert_eq!(eval_poly(&ones, &t).unwrap(), expected);
        }
    }

    #[test]
    fn cubic_differs_from_bernstein_in_the_interior() {
        let t = q(1, 2);
        let s = q(1, 2);
        let bern1 = q(3, 1) * t.clone() * s.clone() * s.clone();
        let bern2 = q(3, 1) * t.clone() * t.clone() * s.clone();
        assert_ne!(eval_basis(3, 1, &t).unwrap(), bern1);
        assert_ne!(eval_basis(3, 2, &t).unwrap(), bern2);
        assert_eq!(eval_basis(3, 1, &t).unwrap(), q(2, 1) * t.clone() * s.clone() * s.clone());
        // degree 2 coincides with Bernstein
        assert_eq!(eval_basis(2, 0, &t).unwrap(), s.clone() * s.clone());
        assert_eq!(eval_basis(2, 1, &t).unwrap(), q(2, 1) * t.clone() * s.clone());
        assert_eq!(eval_basis(2, 2, &t).unwrap(), t.clone() * t.clone());
    }

    #[test]
    fn node_validation() {
        assert!(matches!(NodeSet::<f64>::new(vec![]), Err(Error::EmptyNodes)));
        assert!(matches!(NodeSet::new(vec![0.0, 0.5]), Err(Error::NodeOutOfRange { index: 1, .. })));
        assert!(matches!(NodeSet::new(vec![0.5, 1.0]), Err(Error::NodeOutOfRange { index: 2, .. })));
        let err = NodeSet::new(vec![0.2, 0.6, 0.4]).unwrap_err();
        assert!(matches!(err, Error::NodesNotIncreasing { first: 2, second: 3, .. }));
        assert!(err.to_string().contains("t2") && err.to_string().contains("t3"));
        assert!(NodeSet::new(vec![0.2, 0.2]).is_err());
        assert_eq!(NodeSet::sorted(vec![0.6, 0.2, 0.4]).unwrap().as_slice(), &[0.2, 0.4, 0.6]);
        assert!(NodeSet::sorted(vec![0.6, 0.2, 0.6]).is_err());
    }

    #[test]
    fn parity_follows_degree() {
        let nodes = NodeSet::new(vec![0.1, 0.2, 0.3]).unwrap();
        assert_eq!(nodes.degree(), 2);
        assert_eq!(nodes.parity(), Parity::Even);
    }

    fn arb_t() -> impl Strategy<Value = Rational> {
        (2i64..1000).prop_flat_map(|d| (1..d, Just(d))).prop_map(|(n, d)| q(n, d))
    }

    proptest! {
        #[test]
        fn partition_of_unity_is_exact(n in 0usize..=12, t in arb_t()) {
            let sum = (0..=n).fold(q(0, 1), |acc, i| acc + eval_basis(n, i, &t).unwrap());
            prop_assert_eq!(sum, q(1, 1));
        }

        #[test]
        fn basis_is_positive_inside(n in 0usize..=12, t in arb_t()) {
            for i in 0..=n {
                prop_assert!(eval_basis(n, i, &t).unwrap().is_positive());
            }
        }
    }
}
