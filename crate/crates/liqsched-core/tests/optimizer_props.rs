//! Optimizer properties on randomized markets: the scalar two-asset form
//! against the general one, discrete-to-continuous convergence, and the
//! integer step choice against a brute-force scan.

use liqsched_core::cost::var_p_linear;
use liqsched_core::optimizer::{optimal_steps_discrete, optimal_time_closed, optimal_time_two_asset};
use liqsched_core::{MarketParams, RiskLevel};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

/// A non-degenerate market: positive positions, an all-positive sigma block
/// (so `x_0'Sigma x_0 > 0` by construction), and gamma drawn at the eta
/// scale so it perturbs the discrete first-order condition without
/// dominating it.
fn random_market(rng: &mut ChaCha8Rng, n: usize) -> MarketParams {
    let x_scale = 10.0f64.powf(rng.random_range(3.0..6.5));
    let e_scale = 10.0f64.powf(rng.random_range(-9.0..-6.0));
    let s0: Vec<f64> = (0..n).map(|_| rng.random_range(20.0..120.0f64)).collect();
    let x0: Vec<f64> = (0..n).map(|_| x_scale * rng.random_range(0.3..3.0f64)).collect();
    let sigma: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..n).map(|_| rng.random_range(0.01..0.2f64)).collect())
        .collect();
    let gamma: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..n).map(|_| e_scale * rng.random_range(-0.5..0.5f64)).collect())
        .collect();
    let eta: Vec<f64> = (0..n).map(|_| e_scale * rng.random_range(0.2..1.0f64)).collect();
    MarketParams::new(s0, x0, sigma, gamma, eta).unwrap()
}

#[test]
fn two_asset_form_matches_general_everywhere() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x2A55);
    let risk = RiskLevel::default();
    for _ in 0..100 {
        let p = random_market(&mut rng, 2);
        let general = optimal_time_closed(&p, &risk).unwrap().t_star;
        let scalar = optimal_time_two_asset(
            [p.x0()[0], p.x0()[1]],
            [p.eta()[0], p.eta()[1]],
            [
                [p.sigma()[0][0], p.sigma()[0][1]],
                [p.sigma()[1][0], p.sigma()[1][1]],
            ],
            &risk,
        )
        .unwrap();
        assert!(rel(scalar, general) < 1e-12, "{scalar} vs {general}");
    }
}

#[test]
fn discrete_horizon_converges_to_continuous() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7AD0);
    let risk = RiskLevel::default();
    for case in 0..20 {
        let n = rng.random_range(1..=3usize);
        let p = random_market(&mut rng, n);
        let t_star = optimal_time_closed(&p, &risk).unwrap().t_star;
        let mut errors = Vec::new();
        for divisor in [10.0, 100.0, 1000.0] {
            let tau = t_star / divisor;
            let root = optimal_steps_discrete(&p, tau, &risk).unwrap().m_real.unwrap();
            errors.push((tau * root - t_star).abs() / t_star);
        }
        assert!(
            errors[1] < errors[0] && errors[2] < errors[1],
            "case {case}: not decreasing: {errors:?}"
        );
        assert!(errors[2] < 0.01, "case {case}: {errors:?}");
    }
}

#[test]
fn integer_choice_matches_brute_force_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5CA1);
    let risk = RiskLevel::default();
    for case in 0..10 {
        let n = rng.random_range(1..=3usize);
        let p = random_market(&mut rng, n);
        let t_star = optimal_time_closed(&p, &risk).unwrap().t_star;
        let tau = t_star / rng.random_range(5.0..40.0f64);
        let opt = optimal_steps_discrete(&p, tau, &risk).unwrap();
        let m = opt.m_star.unwrap();

        let mut best = (0usize, f64::INFINITY);
        for candidate in 1..=5000usize {
            let v = var_p_linear(&p, candidate, tau, &risk).unwrap();
            if v < best.1 {
                best = (candidate, v);
            }
        }
        assert_eq!(m, best.0, "case {case}");
        assert_eq!(opt.objective, best.1, "case {case}");
        assert!(
            (opt.m_real.unwrap() - m as f64).abs() <= 1.0,
            "case {case}: root {} vs integer {m}",
            opt.m_real.unwrap()
        );
    }
}

#[test]
fn closed_horizon_ignores_gamma_on_random_markets() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6A3A);
    let risk = RiskLevel::default();
    for _ in 0..25 {
        let n = rng.random_range(1..=4usize);
        let p = random_market(&mut rng, n);
        let zeroed = MarketParams::new(
            p.s0().to_vec(),
            p.x0().to_vec(),
            p.sigma().to_vec(),
            vec![vec![0.0; n]; n],
            p.eta().to_vec(),
        )
        .unwrap();
        let a = optimal_time_closed(&p, &risk).unwrap().t_star;
        let b = optimal_time_closed(&zeroed, &risk).unwrap().t_star;
        assert_eq!(a.to_bits(), b.to_bits());
    }
}
