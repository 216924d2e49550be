use super::*;
use crate::problems::{make_logistic, make_noisy_quadratic, NoiseKind};

fn unit_quadratic_1d() -> crate::problems::ProblemSpec {
    make_noisy_quadratic(1, 1.0, NoiseKind::None).unwrap()
}

// ---------------------------------------------------------------------------
// STORM
// ---------------------------------------------------------------------------

#[test]
fn init_records_fresh_gradient_and_pre_step_rate() {
    let spec = unit_quadratic_1d();
    let params = StormParams::new(0.1, 0.1, 1.0).unwrap();
    let mut rng = RngStream::from_seed(0);
    let state = storm_init(&Vector::from_vec(vec![1.0]), spec.oracle.as_ref(), params, &mut rng)
        .unwrap();
    assert_eq!(state.d().as_slice(), &[1.0]);
    assert_eq!(state.g_last(), 1.0);
    assert_eq!(state.step_count(), 0);
    // eta_0 = 0.1 / 0.1^(1/3); frozen from an independent evaluation.
    assert!((state.eta() - 0.21544346900318836).abs() < 1e-15);
    assert_eq!(state.a_last(), 1.0);
}

#[test]
fn init_at_stationary_point_of_noiseless_problem() {
    let spec = make_noisy_quadratic(3, 2.0, NoiseKind::None).unwrap();
    let params = StormParams::new(0.1, 0.1, 1.0).unwrap();
    let mut rng = RngStream::from_seed(0);
    let state =
        storm_init(&Vector::zeros(3), spec.oracle.as_ref(), params, &mut rng).unwrap();
    assert_eq!(state.d().as_slice(), &[0.0; 3]);
    assert_eq!(state.g_last(), 0.0);
}

#[test]
fn one_noiseless_step_matches_hand_arithmetic() {
    // 1-D F(x) = x^2/2, x1 = 1, k = w = 0.1:
    // G1 = 1, eta_1 = 0.1/(0.1 + 1)^(1/3), x2 = 1 - eta_1.
    // Frozen from an independent scalar evaluation.
    let spec = unit_quadratic_1d();
    let params = StormParams::new(0.1, 0.1, 1.0).unwrap();
    let mut rng = RngStream::from_seed(0);
    let mut state =
        storm_init(&Vector::from_vec(vec![1.0]), spec.oracle.as_ref(), params, &mut rng).unwrap();
    let detail = state.step_detailed(spec.oracle.as_ref(), &mut rng).unwrap();
    assert!((detail.eta - 0.09687293061514643).abs() < 1e-15);
    assert!((state.x()[0] - 0.9031270693848535).abs() < 1e-15);
    assert_eq!(detail.step, 1);
    assert_eq!(state.step_count(), 1);
}

#[test]
fn zero_gradient_oracle_freezes_the_iterate() {
    // All-zero features make every sample gradient vanish.
    let spec = make_logistic(4, 2, 0.0, 3).unwrap();
    let params = StormParams::new(0.1, 0.1, 5.0).unwrap();
    let mut rng = RngStream::from_seed(8);
    let x1 = Vector::from_vec(vec![0.4, -0.7]);
    let mut state = storm_init(&x1, spec.oracle.as_ref(), params, &mut rng).unwrap();
    for _ in 0..25 {
        state.step(spec.oracle.as_ref(), &mut rng).unwrap();
    }
    assert_eq!(state.x(), &x1);
    assert_eq!(state.d().as_slice(), &[0.0, 0.0]);
}

#[test]
fn clamped_momentum_weight_of_one_makes_direction_the_fresh_gradient() {
    let spec = make_noisy_quadratic(3, 5.0, NoiseKind::BoundedUniform { radius: 0.5 }).unwrap();
    let params = StormParams::new(0.1, 0.1, 1e12).unwrap();
    let mut rng = RngStream::from_seed(11);
    let mut state =
        storm_init(&Vector::ones(3), spec.oracle.as_ref(), params, &mut rng).unwrap();
    for _ in 0..10 {
        let detail = state.step_detailed(spec.oracle.as_ref(), &mut rng).unwrap();
        assert_eq!(detail.a, 1.0);
        assert_eq!(state.d(), &detail.g_new);
    }
}

#[test]
fn unclamped_mode_lets_the_weight_exceed_one() {
    let spec = make_noisy_quadratic(2, 1.0, NoiseKind::None).unwrap();
    let params = StormParams::new(0.1, 0.1, 1e4).unwrap().with_clamp(false);
    let mut rng = RngStream::from_seed(2);
    let mut state =
        storm_init(&Vector::ones(2), spec.oracle.as_ref(), params, &mut rng).unwrap();
    let detail = state.step_detailed(spec.oracle.as_ref(), &mut rng).unwrap();
    assert!((detail.a - 1e4 * detail.eta * detail.eta).abs() < 1e-12);
    assert!(detail.a > 1.0);
}

#[test]
fn both_gradients_in_a_step_use_the_same_sample() {
    let spec = make_noisy_quadratic(4, 3.0, NoiseKind::Gaussian { std: 1.0 }).unwrap();
    let params = StormParams::new(0.1, 0.1, 10.0).unwrap();
    let mut rng = RngStream::from_seed(5);
    let mut state =
        storm_init(&Vector::ones(4), spec.oracle.as_ref(), params, &mut rng).unwrap();
    for _ in 0..5 {
        let x_before = state.x().clone();
        let detail = state.step_detailed(spec.oracle.as_ref(), &mut rng).unwrap();
        // Re-evaluating on the recorded sample reproduces both gradients
        // bit-exactly: same sample, pure oracle.
        let again_old = spec.oracle.stochastic_grad(&detail.x_prev, &detail.sample).unwrap();
        let again_new = spec.oracle.stochastic_grad(state.x(), &detail.sample).unwrap();
        assert_eq!(again_old, detail.g_old);
        assert_eq!(again_new, detail.g_new);
        assert_eq!(detail.x_prev, x_before);
    }
}

#[test]
fn adaptive_schedule_identity_and_monotonicity() {
    let spec = make_noisy_quadratic(5, 10.0, NoiseKind::BoundedUniform { radius: 1.0 }).unwrap();
    let params = StormParams::new(0.1, 0.1, 10.0).unwrap();
    let mut rng = RngStream::from_seed(7);
    let mut state =
        storm_init(&Vector::ones(5), spec.oracle.as_ref(), params, &mut rng).unwrap();
    let mut sum = state.g_last().powi(2);
    let mut prev_eta = state.eta();
    for _ in 0..200 {
        let detail = state.step_detailed(spec.oracle.as_ref(), &mut rng).unwrap();
        // eta_t * (w + sum_{i<=t} G_i^2)^(1/3) = k
        let lhs = detail.eta * (0.1 + sum).cbrt();
        assert!((lhs - 0.1).abs() <= 1e-12 * 0.1);
        assert!((state.sum_g_sq() - sum).abs() <= 1e-12 * sum.max(1.0));
        assert!(detail.eta <= prev_eta);
        prev_eta = detail.eta;
        sum += detail.grad_norm * detail.grad_norm;
    }
}

#[test]
fn fixed_sigma_schedule_is_deterministic_in_t() {
    let sigma = 1.3;
    let spec = make_noisy_quadratic(3, 2.0, NoiseKind::Gaussian { std: 0.75 }).unwrap();
    let params = StormParams::new(0.2, 0.4, 2.0)
        .unwrap()
        .with_mode(StormMode::FixedSigma { sigma })
        .unwrap();
    let mut rng = RngStream::from_seed(9);
    let mut state =
        storm_init(&Vector::ones(3), spec.oracle.as_ref(), params, &mut rng).unwrap();
    for t in 1..=50u64 {
        let detail = state.step_detailed(spec.oracle.as_ref(), &mut rng).unwrap();
        let expected = 0.2 / (0.4 + sigma * sigma * t as f64).cbrt();
        assert_eq!(detail.eta, expected, "step {t}");
    }
}

#[test]
fn fixed_sigma_requires_positive_sigma() {
    let err = StormParams::new(0.1, 0.1, 1.0)
        .unwrap()
        .with_mode(StormMode::FixedSigma { sigma: 0.0 });
    assert!(err.is_err());
}

#[test]
fn storm_params_reject_bad_values() {
    assert!(StormParams::new(0.0, 0.1, 1.0).is_err());
    assert!(StormParams::new(0.1, 0.0, 1.0).is_err());
    assert!(StormParams::new(0.1, 0.1, -1.0).is_err());
    assert!(StormParams::new(f64::NAN, 0.1, 1.0).is_err());
}

// ---------------------------------------------------------------------------
// Baselines
// ---------------------------------------------------------------------------

#[test]
fn sgd_one_step_and_zero_gradient() {
    let spec = unit_quadratic_1d();
    let mut rng = RngStream::from_seed(0);
    let mut sgd = Sgd::init(
        &Vector::from_vec(vec![1.0]),
        spec.oracle.as_ref(),
        SgdParams::new(0.1).unwrap(),
    )
    .unwrap();
    sgd.step(spec.oracle.as_ref(), &mut rng).unwrap();
    assert!((sgd.iterate()[0] - 0.9).abs() < 1e-15);

    let frozen = make_logistic(3, 2, 0.0, 1).unwrap();
    let x1 = Vector::from_vec(vec![2.0, -1.0]);
    let mut sgd =
        Sgd::init(&x1, frozen.oracle.as_ref(), SgdParams::new(0.1).unwrap()).unwrap();
    for _ in 0..10 {
        sgd.step(frozen.oracle.as_ref(), &mut rng).unwrap();
    }
    assert_eq!(sgd.iterate(), &x1);
}

#[test]
fn zero_learning_rate_rejected_at_construction() {
    assert!(SgdParams::new(0.0).is_err());
    assert!(MomentumParams::new(0.0, 0.5).is_err());
    assert!(AdagradParams::new(0.0, 1e-8).is_err());
    assert!(AdamParams::new(0.0, 0.9, 0.999, 1e-8).is_err());
}

#[test]
fn momentum_with_full_weight_reproduces_sgd_trajectories() {
    let spec = make_noisy_quadratic(4, 4.0, NoiseKind::Gaussian { std: 0.5 }).unwrap();
    let x1 = Vector::ones(4);
    let mut rng_a = RngStream::from_seed(33);
    let mut rng_b = RngStream::from_seed(33);
    let mut mom = Momentum::init(&x1, spec.oracle.as_ref(), MomentumParams::new(0.05, 1.0).unwrap())
        .unwrap();
    let mut sgd = Sgd::init(&x1, spec.oracle.as_ref(), SgdParams::new(0.05).unwrap()).unwrap();
    for _ in 0..50 {
        mom.step(spec.oracle.as_ref(), &mut rng_a).unwrap();
        sgd.step(spec.oracle.as_ref(), &mut rng_b).unwrap();
        assert_eq!(mom.iterate(), sgd.iterate());
    }
}

#[test]
fn momentum_with_zero_weight_never_moves() {
    let spec = unit_quadratic_1d();
    let mut rng = RngStream::from_seed(1);
    let mut mom = Momentum::init(
        &Vector::from_vec(vec![1.0]),
        spec.oracle.as_ref(),
        MomentumParams::new(0.1, 0.0).unwrap(),
    )
    .unwrap();
    for _ in 0..20 {
        mom.step(spec.oracle.as_ref(), &mut rng).unwrap();
    }
    assert_eq!(mom.iterate().as_slice(), &[1.0]);
    assert_eq!(mom.direction().unwrap().as_slice(), &[0.0]);
}

#[test]
fn momentum_small_weight_first_step() {
    // a = 0.1, eta = 0.1 on x^2/2 from 1: d1 = 0.1, x2 = 0.99.
    let spec = unit_quadratic_1d();
    let mut rng = RngStream::from_seed(1);
    let mut mom = Momentum::init(
        &Vector::from_vec(vec![1.0]),
        spec.oracle.as_ref(),
        MomentumParams::new(0.1, 0.1).unwrap(),
    )
    .unwrap();
    mom.step(spec.oracle.as_ref(), &mut rng).unwrap();
    assert!((mom.direction().unwrap()[0] - 0.1).abs() < 1e-15);
    assert!((mom.iterate()[0] - 0.99).abs() < 1e-15);
}

#[test]
fn first_adagrad_step_normalizes_by_gradient_magnitude() {
    let spec = make_noisy_quadratic(2, 2.0, NoiseKind::None).unwrap();
    let x1 = Vector::from_vec(vec![2.0, -3.0]);
    let eps = 1e-8;
    let mut rng = RngStream::from_seed(1);
    let mut ada =
        Adagrad::init(&x1, spec.oracle.as_ref(), AdagradParams::new(0.5, eps).unwrap()).unwrap();
    let g = spec.oracle.true_grad(&x1).unwrap();
    ada.step(spec.oracle.as_ref(), &mut rng).unwrap();
    for i in 0..2 {
        let expected = x1[i] - 0.5 * g[i] / (g[i].abs() + eps);
        assert!((ada.iterate()[i] - expected).abs() < 1e-15);
    }
}

#[test]
fn adam_with_zero_decays_reduces_to_sign_scaled_steps() {
    let spec = make_noisy_quadratic(2, 2.0, NoiseKind::None).unwrap();
    let x1 = Vector::from_vec(vec![2.0, -3.0]);
    let eps = 1e-8;
    let mut rng = RngStream::from_seed(1);
    let mut adam = Adam::init(
        &x1,
        spec.oracle.as_ref(),
        AdamParams::new(0.1, 0.0, 0.0, eps).unwrap(),
    )
    .unwrap();
    let g = spec.oracle.true_grad(&x1).unwrap();
    adam.step(spec.oracle.as_ref(), &mut rng).unwrap();
    for i in 0..2 {
        let expected = x1[i] - 0.1 * g[i] / (g[i].abs() + eps);
        assert!((adam.iterate()[i] - expected).abs() < 1e-15);
    }
}

#[test]
fn pinned_three_step_traces_on_the_unit_parabola() {
    // Independent scalar recurrences (computed by hand/script and frozen):
    // gradient of x^2/2 at x is x, no noise.
    let spec = unit_quadratic_1d();
    let x1 = Vector::from_vec(vec![1.0]);
    let mut rng = RngStream::from_seed(0);

    let mut sgd = Sgd::init(&x1, spec.oracle.as_ref(), SgdParams::new(0.1).unwrap()).unwrap();
    for _ in 0..3 {
        sgd.step(spec.oracle.as_ref(), &mut rng).unwrap();
    }
    assert!((sgd.iterate()[0] - 0.729).abs() < 1e-15);

    let mut mom = Momentum::init(
        &x1,
        spec.oracle.as_ref(),
        MomentumParams::new(0.1, 0.1).unwrap(),
    )
    .unwrap();
    for _ in 0..3 {
        mom.step(spec.oracle.as_ref(), &mut rng).unwrap();
    }
    assert!((mom.iterate()[0] - 0.944379).abs() < 1e-12);

    let mut ada = Adagrad::init(
        &x1,
        spec.oracle.as_ref(),
        AdagradParams::new(0.1, 1e-8).unwrap(),
    )
    .unwrap();
    let expected_ada = [0.900000001, 0.8331035282939266, 0.7804561830893826];
    for step in 0..3 {
        ada.step(spec.oracle.as_ref(), &mut rng).unwrap();
        assert!(
            (ada.iterate()[0] - expected_ada[step]).abs() < 1e-12,
            "adagrad step {step}"
        );
    }

    let mut adam = Adam::init(
        &x1,
        spec.oracle.as_ref(),
        AdamParams::new(0.1, 0.9, 0.999, 1e-8).unwrap(),
    )
    .unwrap();
    let expected_adam = [0.9000000009999999, 0.8004122297123379, 0.7015862745044147];
    for step in 0..3 {
        adam.step(spec.oracle.as_ref(), &mut rng).unwrap();
        assert!(
            (adam.iterate()[0] - expected_adam[step]).abs() < 1e-12,
            "adam step {step}"
        );
    }
}

#[test]
fn non_finite_state_reports_the_failing_step() {
    // eta large enough to blow up the quadratic in a known number of steps.
    let spec = make_noisy_quadratic(1, 1.0, NoiseKind::None).unwrap();
    let mut rng = RngStream::from_seed(0);
    let mut sgd = Sgd::init(
        &Vector::from_vec(vec![1e300]),
        spec.oracle.as_ref(),
        SgdParams::new(1e10).unwrap(),
    )
    .unwrap();
    let mut failed_at = None;
    for _ in 0..10 {
        match sgd.step(spec.oracle.as_ref(), &mut rng) {
            Ok(_) => {}
            Err(Error::NonFinite { step, .. }) => {
                failed_at = Some(step);
                break;
            }
            Err(e) => panic!("unexpected error {e}"),
        }
    }
    assert!(failed_at.is_some());
}
