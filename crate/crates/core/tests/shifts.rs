mod common;

use common::*;
use mean_transform::linalg::operator_norm;
use mean_transform::gauges::numerical_radius;
use mean_transform::shifts::{
    build_shift, convergence_experiment, iterated_weights, lambda_mean_weights,
    rank_one_iterate, RankOnePair, WeightRule, WeightSequence,
};
use mean_transform::transforms::{iterate_lambda_mean, lambda_mean};
use proptest::prelude::*;
use rand::Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Closed-form iterated weights against repeated transforms of the
    /// truncated matrix, away from the truncation edge.
    #[test]
    fn binomial_weights_match_matrix_iteration(seed in any::<u64>(), lam in 0.01f64..0.99, k in 1usize..=6) {
        let mut r = rng(seed);
        let m = 14;
        let w: Vec<f64> = (0..m - 1).map(|_| r.random_range(0.1..3.0)).collect();
        let alpha = WeightSequence::lower(w).unwrap();
        let it = iterate_lambda_mean(&build_shift(&alpha, m).unwrap(), lam, k).unwrap();
        for n in 0..m - 1 - k {
            let f = iterated_weights(&alpha, lam, k, n).unwrap();
            prop_assert!((it[(n + 1, n)].norm() - f).abs() <= 1e-10);
        }
    }

    #[test]
    fn single_step_weights_match_matrix(seed in any::<u64>(), lam in 0.0f64..=1.0) {
        let mut r = rng(seed);
        let m = 9;
        let w: Vec<f64> = (0..m - 1).map(|_| r.random_range(0.1..3.0)).collect();
        let alpha = WeightSequence::lower(w).unwrap();
        let mt = lambda_mean(&build_shift(&alpha, m).unwrap(), lam).unwrap();
        let expect = lambda_mean_weights(&alpha, lam, m - 1, true).unwrap().window(m - 1).unwrap();
        for (n, e) in expect.iter().enumerate() {
            prop_assert!((mt[(n + 1, n)].norm() - e).abs() <= 1e-12);
        }
    }

    #[test]
    fn rank_one_iterates_match_matrix_iteration(seed in any::<u64>(), lam in 0.05f64..0.95, n in 0usize..=10) {
        let mut r = rng(seed);
        let dim = r.random_range(2..=6);
        let pair = RankOnePair::new(vector(&mut r, dim), vector(&mut r, dim)).unwrap();
        let t = pair.matrix();
        let scale = operator_norm(&t);
        let closed = rank_one_iterate(&pair, lam, n).unwrap().matrix();
        let iterated = iterate_lambda_mean(&t, lam, n).unwrap();
        prop_assert!(closed.max_abs_diff(&iterated) <= 1e-9 * scale);
        let b = numerical_radius(&closed, 1e-10 * scale).unwrap();
        let w = pair.iterate_radius(lam, n);
        prop_assert!(b.lo <= w + 1e-12 * scale && w <= b.hi + 1e-12 * scale);
    }
}

/// Harmonic weights at λ = ½: the window error at `N` iterations is
/// `E[1/(X+1)]` for `X ~ Bin(N, ½)`, which is `(2 − 2^{−N})/(N+1)`.
#[test]
fn harmonic_error_has_closed_form() {
    let alpha = WeightSequence::rule(WeightRule::Harmonic).unwrap();
    let rep = convergence_experiment(&alpha, 0.5, 40, 8).unwrap();
    for (n, e) in &rep.errors {
        let exact = (2.0 - 0.5f64.powi(*n as i32)) / (*n as f64 + 1.0);
        assert!((e - exact).abs() <= 1e-12, "N={n}: {e} vs {exact}");
    }
    assert!(rep.nonincreasing);
}

#[test]
fn convergence_errors_never_increase() {
    let rules = [
        WeightRule::Harmonic,
        WeightRule::Geometric { ratio: 0.7 },
        WeightRule::Saturating { ratio: 0.5 },
        WeightRule::Constant { value: 2.0 },
    ];
    for rule in rules {
        let alpha = WeightSequence::rule(rule.clone()).unwrap();
        for lam in [0.0, 0.25, 0.5, 0.9] {
            let rep = convergence_experiment(&alpha, lam, 30, 12).unwrap();
            let errs: Vec<f64> = rep.errors.iter().map(|e| e.1).collect();
            assert!(errs.windows(2).all(|w| w[1] <= w[0] + 1e-12), "{rule:?} λ={lam}");
            assert!(rep.nonincreasing);
        }
    }
    let constant = WeightSequence::rule(WeightRule::Constant { value: 2.0 }).unwrap();
    assert_eq!(convergence_experiment(&constant, 0.5, 5, 4).unwrap().final_error(), 0.0);
}

#[test]
fn geometric_weights_iterate_geometrically() {
    // α_n = q^n gives α^{(N)}_n = q^n (λ + (1−λ)q)^N.
    let q = 0.6;
    let alpha = WeightSequence::rule(WeightRule::Geometric { ratio: q }).unwrap();
    for lam in [0.1, 0.5, 0.8] {
        for big_n in [1, 5, 20] {
            for n in [0, 3, 7] {
                let f = iterated_weights(&alpha, lam, big_n, n).unwrap();
                let exact = q.powi(n as i32) * (lam + (1.0 - lam) * q).powi(big_n as i32);
                assert!((f - exact).abs() <= 1e-13, "λ={lam} N={big_n} n={n}");
            }
        }
    }
}
