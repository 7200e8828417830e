#![allow(dead_code)]

use proptest::prelude::*;
use rand::Rng;
use sbv_core::{NodeSet, Rational, Scalar};

/// Sixteen nodes with κ₂ ≈ 3.2e8 and the matching right-hand side.
pub const NODES16: [(i64, i64); 16] = [
    (1, 16), (1, 13), (2, 11), (3, 13), (1, 4), (7, 18), (2, 5), (4, 9),
    (7, 15), (17, 30), (15, 26), (9, 13), (7, 10), (8, 11), (5, 6), (20, 21),
];
pub const RHS16: [i64; 16] = [12, -3, 0, 1, 5, -7, 0, 2, 21, -4, 0, 9, -11, 6, -8, 0];

pub fn q(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

pub fn example_nodes() -> NodeSet<Rational> {
    NodeSet::new(NODES16.iter().map(|&(n, d)| q(n, d)).collect()).unwrap()
}

pub fn example_rhs() -> Vec<Rational> {
    RHS16.iter().map(|&b| Rational::from(b)).collect()
}

pub fn to_float(nodes: &NodeSet<Rational>) -> NodeSet<f64> {
    NodeSet::new(nodes.as_slice().iter().map(Rational::to_f64).collect()).unwrap()
}

/// Exact value of each double, so float results can be judged against
/// the oracle on the very same nodes.
pub fn exact_of(nodes: &NodeSet<f64>) -> NodeSet<Rational> {
    NodeSet::new(nodes.as_slice().iter().map(|t| t.to_rational().unwrap()).collect()).unwrap()
}

/// `order` distinct nodes `k/den` with a random denominator.
pub fn random_nodes<R: Rng>(rng: &mut R, order: usize) -> NodeSet<Rational> {
    let den = rng.gen_range((order as i64 + 2).max(11)..400);
    let mut ks = std::collections::BTreeSet::new();
    while ks.len() < order {
        ks.insert(rng.gen_range(1..den));
    }
    NodeSet::new(ks.into_iter().map(|k| q(k, den)).collect()).unwrap()
}

/// Random double nodes in (0, 1), strictly increasing.
pub fn random_float_nodes<R: Rng>(rng: &mut R, order: usize) -> NodeSet<f64> {
    loop {
        let mut t: Vec<f64> = (0..order).map(|_| rng.gen_range(0.01..0.99)).collect();
        t.sort_by(f64::total_cmp);
        if let Ok(n) = NodeSet::new(t) {
            return n;
        }
    }
}

pub fn arb_nodes(max_order: usize) -> impl Strategy<Value = NodeSet<Rational>> {
    (1..=max_order)
        .prop_flat_map(|order| (Just(order), (4 * order as i64).max(11)..400))
        .prop_flat_map(|(order, den)| (prop::collection::btree_set(1..den, order), Just(den)))
        .prop_map(|(ks, den)| NodeSet::new(ks.into_iter().map(|k| q(k, den)).collect()).unwrap())
}

pub fn rel(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        a.abs()
    } else {
        ((a - b) / b).abs()
    }
}

/// Skeel-type amplification `‖ |A⁻¹| |b| ‖₂ / ‖A⁻¹ b‖₂`, exactly. A
/// structured solve from an accurate BD has forward error of order u times
/// this, which reduces to u when `b` alternates in sign.
pub fn skeel_ratio(a: &sbv_core::Matrix<Rational>, b: &[Rational]) -> f64 {
    use sbv_core::oracle::exact_solve;
    let n = b.len();
    let x = exact_solve(a, b).unwrap();
    let mut amplified = vec![Rational::zero(); n];
    for j in 0..n {
        let e: Vec<Rational> = (0..n).map(|k| if k == j { Rational::one() } else { Rational::zero() }).collect();
        let col = exact_solve(a, &e).unwrap();
        for i in 0..n {
            amplified[i] = &amplified[i] + &(&col[i].abs_value() * &b[j].abs_value());
        }
    }
    let norm = |v: &[Rational]| v.iter().map(|x| x.to_f64().powi(2)).sum::<f64>().sqrt();
    norm(&amplified) / norm(&x)
}
