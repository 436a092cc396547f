//! Randomized property tests for the exact sparsity functionals and the
//! estimator's algebraic identities.

use numsparse::estimator::{ecf, jensen_lower_bound, variance_ext};
use numsparse::inference::{norm_ci, SparsityEstimate};
use numsparse::noise::{noise_cf, NoiseModel};
use numsparse::sparsity::{induced_distribution, numerical_sparsity, renyi_entropy, Signal};
use proptest::prelude::*;

fn signal_strategy() -> impl Strategy<Value = Signal> {
    prop::collection::vec(-10.0f64..10.0, 1..25)
        .prop_filter("nonzero", |v| v.iter().any(|&x| x != 0.0))
        .prop_map(Signal::new)
}

// The continuous branch keeps q away from 1, where the exponent q/(1-q)
// amplifies float roundoff past the tolerances below; q = 1 itself goes
// through the closed-form limit.
fn q_strategy() -> impl Strategy<Value = f64> {
    prop_oneof![
        Just(0.0),
        Just(1.0),
        Just(f64::INFINITY),
        0.01f64..0.99,
        1.01f64..4.0,
    ]
}

fn noise_strategy() -> impl Strategy<Value = NoiseModel> {
    prop_oneof![
        Just(NoiseModel::Gaussian),
        Just(NoiseModel::Laplace),
        Just(NoiseModel::Uniform),
        Just(NoiseModel::StudentT(2)),
        Just(NoiseModel::StudentT(3)),
        (0.1f64..2.0).prop_map(NoiseModel::Stable),
    ]
}

proptest! {
    #[test]
    fn sparsity_is_scale_invariant(x in signal_strategy(), q in q_strategy(), c in -20.0f64..20.0) {
        prop_assume!(c.abs() > 1e-6);
        let scaled = Signal::new(x.values.iter().map(|&v| c * v).collect());
        let a = numerical_sparsity(&x, q);
        let b = numerical_sparsity(&scaled, q);
        prop_assert!((a - b).abs() <= 1e-12 * a.max(1.0), "{a} vs {b}");
    }

    #[test]
    fn sparsity_monotone_in_q(x in signal_strategy(), q in 0.0f64..4.0, dq in 0.0f64..4.0) {
        prop_assume!((q - 1.0).abs() > 1e-3 && (q + dq - 1.0).abs() > 1e-3);
        let s_lo = numerical_sparsity(&x, q);
        let s_hi = numerical_sparsity(&x, q + dq);
        prop_assert!(s_hi <= s_lo + 1e-9);
        prop_assert!(s_lo <= x.l0() + 1e-9);
    }

    #[test]
    fn sparsity_in_range(x in signal_strategy(), q in q_strategy()) {
        let s = numerical_sparsity(&x, q);
        prop_assert!(s >= 0.0 && s <= x.len() as f64 + 1e-9);
    }

    #[test]
    fn entropy_and_ratio_routes_agree(x in signal_strategy(), q in 0.01f64..4.0) {
        prop_assume!((q - 1.0).abs() > 1e-3);
        let via_ratio = numerical_sparsity(&x, q);
        let pi = induced_distribution(&x, 1.0).unwrap();
        let via_entropy = renyi_entropy(&pi, q).exp();
        prop_assert!((via_ratio - via_entropy).abs() <= 1e-12 * via_entropy.max(1.0));
    }

    #[test]
    fn ecf_bounded_and_conjugate(y in prop::collection::vec(-50.0f64..50.0, 1..40), t in -10.0f64..10.0) {
        let (re, im) = ecf(&y, t).unwrap();
        prop_assert!(re * re + im * im <= 1.0 + 1e-12);
        let (re2, im2) = ecf(&y, -t).unwrap();
        prop_assert!((re - re2).abs() < 1e-12 && (im + im2).abs() < 1e-12);
    }

    #[test]
    fn noise_cf_even_and_bounded(noise in noise_strategy(), t in -20.0f64..20.0) {
        let v = noise_cf(noise, t).unwrap();
        prop_assert_eq!(v, noise_cf(noise, -t).unwrap());
        prop_assert!(v.abs() <= 1.0 + 1e-15);
    }

    #[test]
    fn variance_dominates_jensen(noise in noise_strategy(), c in 0.01f64..8.0, rho in 0.0f64..3.0, q in 0.1f64..2.0) {
        let v = variance_ext(c, rho, q, noise).unwrap();
        if v.is_finite() {
            prop_assert!(v >= jensen_lower_bound(c, q) - 1e-9);
        }
    }

    #[test]
    fn confidence_intervals_nest(
        nu in 0.1f64..100.0,
        omega in 0.01f64..50.0,
        n in 10usize..10_000,
        a1 in 0.01f64..0.5,
        a2 in 0.01f64..0.5,
    ) {
        let est = numsparse::estimator::NormEstimate {
            q: 2.0,
            nu_hat: nu,
            omega_hat: omega,
            n,
            tuning: dummy_tuning(),
        };
        let (lo_level, hi_level) = if a1 <= a2 { (a1, a2) } else { (a2, a1) };
        let wide = norm_ci(&est, lo_level, lo_level).unwrap();
        let tight = norm_ci(&est, hi_level, hi_level).unwrap();
        prop_assert!(wide.lower <= tight.lower + 1e-12);
        prop_assert!(wide.upper >= tight.upper - 1e-12);
    }

    #[test]
    fn sparsity_estimate_invariants_rederivable(
        nu_q in 0.1f64..50.0,
        nu_1 in 0.1f64..50.0,
        omega_q in 0.01f64..10.0,
        omega_1 in 0.01f64..10.0,
        n1 in 10usize..5000,
        nq in 10usize..5000,
        q in prop_oneof![0.1f64..0.95, 1.05f64..2.0],
    ) {
        let eq = numsparse::estimator::NormEstimate {
            q, nu_hat: nu_q, omega_hat: omega_q, n: nq, tuning: dummy_tuning(),
        };
        let e1 = numsparse::estimator::NormEstimate {
            q: 1.0, nu_hat: nu_1, omega_hat: omega_1, n: n1, tuning: dummy_tuning(),
        };
        let est: SparsityEstimate = numsparse::inference::estimate_sparsity(&eq, &e1).unwrap();
        let pi = nq as f64 / (n1 + nq) as f64;
        let s = nu_q.powf(1.0 / (1.0 - q)) / nu_1.powf(q / (1.0 - q));
        let vt = omega_q / pi * (1.0 / (1.0 - q)).powi(2)
            + omega_1 / (1.0 - pi) * (q / (1.0 - q)).powi(2);
        prop_assert!((est.s_hat - s).abs() <= 1e-12 * s.max(1.0));
        prop_assert!((est.vartheta_hat - vt).abs() <= 1e-12 * vt.max(1.0));
    }
}

fn dummy_tuning() -> numsparse::estimator::TuningState {
    numsparse::estimator::TuningState {
        m_hat: 1.0,
        t_initial: 1.0,
        eta0: 1.0,
        t_pilot: 1.0,
        nu_pilot: 1.0,
        rho_hat: 0.0,
        c_star: 0.3,
        t_opt: 0.3,
        epsilon_q: 0.3,
        re_negative_at_t_opt: false,
        near_tie: false,
    }
}
