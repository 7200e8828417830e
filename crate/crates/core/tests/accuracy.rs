//! Floating-point results judged against exact references.

mod common;

use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sbv_core::oracle::{exact_solve, max_componentwise_error, neville_bd};
use sbv_core::{
    build_matrix, decompose, eval_basis, eval_poly, interpolate, multiplier, pivot, reconstruct, solve,
    solve_vector, transpose_multiplier, Matrix, NodeSet, Rational, Scalar,
};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn float_bd_matches_oracle_componentwise() {
    let mut r = rng(1);
    for order in 2..=16 {
        for _ in 0..4 {
            let nodes = random_float_nodes(&mut r, order);
            let (_, exact) = neville_bd(&build_matrix(&exact_of(&nodes))).unwrap();
            let err = max_componentwise_error(decompose(&nodes).entries().as_slice(), exact.entries().as_slice())
                .unwrap();
            assert!(err <= 1e-13, "order {order}: {err:e}");
        }
    }
}

#[test]
fn float_closed_forms_agree_with_recurrences() {
    let mut r = rng(2);
    for order in 2..=12 {
        let nodes = random_float_nodes(&mut r, order);
        let bd = decompose(&nodes);
        for i in 1..=order {
            assert!(rel(pivot(&nodes, i).unwrap(), *bd.pivot(i)) <= 1e-13);
            for j in 1..i {
                assert!(rel(multiplier(&nodes, i, j).unwrap(), *bd.multiplier(i, j)) <= 1e-13);
                assert!(rel(transpose_multiplier(&nodes, i, j).unwrap(), *bd.transpose_multiplier(i, j)) <= 1e-13);
            }
        }
    }
}

#[test]
fn float_roundtrip_up_to_order_33() {
    let mut r = rng(3);
    for order in [2, 5, 8, 13, 21, 33] {
        let nodes = random_float_nodes(&mut r, order);
        let exact = build_matrix(&exact_of(&nodes));
        let got = reconstruct(&decompose(&nodes));
        let err = max_componentwise_error(got.as_slice(), exact.as_slice()).unwrap();
        assert!(err <= 1e-13, "order {order}: {err:e}");
    }
}

#[test]
fn example_reconstruction_is_entrywise_accurate() {
    let nodes = to_float(&example_nodes());
    let exact = build_matrix(&exact_of(&nodes));
    let err = max_componentwise_error(reconstruct(&decompose(&nodes)).as_slice(), exact.as_slice()).unwrap();
    assert!(err <= 1e-14, "{err:e}");
}

/// Alternating signs in `b` rule out cancellation in the inverse factors,
/// so the solve is componentwise accurate however large κ₂ is.
#[test]
fn alternating_right_hand_sides_solve_to_full_accuracy() {
    let mut r = rng(4);
    for order in 2..=16 {
        let nodes = random_float_nodes(&mut r, order);
        let a = build_matrix(&exact_of(&nodes));
        let b: Vec<f64> = (0..order).map(|k| if k % 2 == 0 { 1.0 + k as f64 } else { -0.5 - k as f64 }).collect();
        let exact_b: Vec<Rational> = b.iter().map(|v| v.to_rational().unwrap()).collect();
        let reference = exact_solve(&a, &exact_b).unwrap();
        let x = solve_vector(&decompose(&nodes), &b).unwrap();
        let err = max_componentwise_error(&x, &reference).unwrap();
        assert!(err <= 1e-13, "order {order}: {err:e}");
    }
}

/// Manufactured `b = A·x_true`: the forward error stays within a modest
/// multiple of u times the Skeel-type amplification of `b`.
#[test]
fn manufactured_solutions_meet_the_forward_bound() {
    let mut r = rng(5);
    for order in 2..=16 {
        let nodes = random_float_nodes(&mut r, order);
        let a = build_matrix(&exact_of(&nodes));
        let y: Vec<Rational> = (0..order as i64).map(|k| q(k * k - 3 * k + 1, k + 2)).collect();
        let b: Vec<f64> = a.matvec(&y).unwrap().iter().map(Rational::to_f64).collect();
        // b is rounded, so the reference solves the rounded system.
        let exact_b: Vec<Rational> = b.iter().map(|v| v.to_rational().unwrap()).collect();
        let reference = exact_solve(&a, &exact_b).unwrap();
        let err = solve(&decompose(&nodes), &b)
            .unwrap()
            .with_reference(&reference)
            .unwrap()
            .relative_error
            .unwrap();
        let bound = 8.0 * (order * order) as f64 * f64::EPSILON * skeel_ratio(&a, &exact_b);
        assert!(err <= bound, "order {order}: {err:e} > {bound:e}");
    }
}

/// Stated target for arbitrary manufactured solutions. Not attainable in
/// double precision: with `x_true = 1` the error tracks κ₂·u (2.5e-8 at
/// order 15 with κ₂ ≈ 2.4e8). Kept to document the gap.
#[test]
#[ignore = "unattainable in f64 for general sign patterns; see README"]
fn manufactured_solutions_to_1e12_regardless_of_conditioning() {
    let mut r = rng(4);
    for order in 2..=15 {
        let nodes = random_float_nodes(&mut r, order);
        let x = solve_vector(&decompose(&nodes), &vec![1.0; order]).unwrap();
        for v in &x {
            assert!((v - 1.0).abs() <= 1e-12, "order {order}: {v}");
        }
    }
}

#[test]
fn unit_vector_solve_at_degree_five() {
    let mut r = rng(5);
    let nodes = random_float_nodes(&mut r, 6);
    let a = build_matrix(&exact_of(&nodes));
    let e3: Vec<Rational> = (0..6).map(|k| if k == 2 { q(1, 1) } else { q(0, 1) }).collect();
    let b: Vec<f64> = a.matvec(&e3).unwrap().iter().map(Rational::to_f64).collect();
    let x = solve_vector(&decompose(&nodes), &b).unwrap();
    for (k, v) in x.iter().enumerate() {
        let want = if k == 2 { 1.0 } else { 0.0 };
        assert!((v - want).abs() <= 1e-13, "{k}: {v}");
    }
}

#[test]
fn solve_undoes_reconstruct() {
    // Well-separated nodes keep b = A·y benign enough to compare directly.
    for order in [2, 3, 5, 8] {
        let t: Vec<f64> = (1..=order).map(|k| k as f64 / (order + 1) as f64).collect();
        let bd = decompose(&NodeSet::new(t).unwrap());
        let y: Vec<f64> = (0..order).map(|k| 1.0 + k as f64 / 3.0).collect();
        let b = reconstruct(&bd).matvec(&y).unwrap();
        let x = solve_vector(&bd, &b).unwrap();
        for (a, b) in x.iter().zip(&y) {
            assert!(rel(*a, *b) <= 1e-11, "order {order}: {a} vs {b}");
        }
    }
}

#[test]
fn example_solve_beats_five_ulp_relative_error() {
    let nodes = example_nodes();
    let b = example_rhs();
    let exact = exact_solve(&build_matrix(&nodes), &b).unwrap();
    let fb: Vec<f64> = b.iter().map(Rational::to_f64).collect();
    let report = solve(&decompose(&to_float(&nodes)), &fb).unwrap().with_reference(&exact).unwrap();
    assert!(report.relative_error.unwrap() <= 5e-15, "{:?}", report.relative_error);
}

/// `|p(t_i) − b_i|` is limited by rounding the coefficients themselves:
/// at most a small multiple of `u · Σ_j s_j(t_i) |a_j|`.
#[test]
fn example_interpolation_residual_is_at_rounding_level() {
    let nodes = to_float(&example_nodes());
    let b: Vec<f64> = RHS16.iter().map(|&v| v as f64).collect();
    let p = interpolate(&nodes, &b).unwrap();
    let n = nodes.degree();
    for (t, v) in nodes.as_slice().iter().zip(&b) {
        let got = eval_poly(p.coefficients(), t).unwrap();
        let weight: f64 = p
            .coefficients()
            .iter()
            .enumerate()
            .map(|(j, a)| eval_basis(n, j, t).unwrap() * a.abs())
            .sum();
        assert!((got - v).abs() <= 16.0 * f64::EPSILON * weight, "{t}: {got} vs {v}");
    }
}

/// Stated target `max |p(t_i) − b_i| / ‖b‖∞ ≤ 1e-12` on the sixteen-node
/// example. Unattainable in double precision: the coefficients reach
/// 1.2e9 and even the correctly rounded exact coefficients leave a
/// residual of 7.1e-10 · ‖b‖∞.
#[test]
#[ignore = "unattainable with f64 coefficients; see README"]
fn example_interpolation_residual_below_1e12() {
    let nodes = to_float(&example_nodes());
    let b: Vec<f64> = RHS16.iter().map(|&v| v as f64).collect();
    let p = interpolate(&nodes, &b).unwrap();
    for (t, v) in nodes.as_slice().iter().zip(&b) {
        let got = eval_poly(p.coefficients(), t).unwrap();
        assert!((got - v).abs() / 21.0 <= 1e-12, "{t}: {got} vs {v}");
    }
}

#[test]
fn float_basis_function_is_recovered() {
    let nodes = NodeSet::new(vec![0.2, 0.4, 0.6, 0.8]).unwrap();
    let values: Vec<f64> = nodes.as_slice().iter().map(|t| eval_basis(3, 1, t).unwrap()).collect();
    let p = interpolate(&nodes, &values).unwrap();
    for (k, c) in p.coefficients().iter().enumerate() {
        let want = if k == 1 { 1.0 } else { 0.0 };
        assert!((c - want).abs() <= 1e-13, "{k}: {c}");
    }
}

#[test]
fn all_ones_is_the_constant_function() {
    let nodes = NodeSet::new(vec![0.25, 0.5]).unwrap();
    let p = interpolate(&nodes, &[1.0, 1.0]).unwrap();
    for c in p.coefficients() {
        assert!((c - 1.0).abs() <= 4.0 * f64::EPSILON, "{c}");
    }
    let mut r = rng(7);
    for order in 1..=12 {
        let nodes = random_float_nodes(&mut r, order);
        let ones = vec![Rational::one(); order];
        let bound = 8.0 * (order * order) as f64 * f64::EPSILON
            * skeel_ratio(&build_matrix(&exact_of(&nodes)), &ones);
        let p = interpolate(&nodes, &vec![1.0; order]).unwrap();
        for c in p.coefficients() {
            assert!((c - 1.0).abs() <= bound, "order {order}: {c}");
        }
    }
}

#[test]
fn float_matrix_rows_sum_to_one() {
    let mut r = rng(8);
    let nodes = random_float_nodes(&mut r, 20);
    let a: Matrix<f64> = build_matrix(&nodes);
    for i in 0..a.rows() {
        let s: f64 = a.row(i).iter().sum();
        assert!((s - 1.0).abs() <= 1e-14);
    }
}
