//! Execution-price simulation and the analytic cost moments.
//!
//! For a schedule `x_0..x_M` with trades `delta_k` and speeds `v_k`, the
//! execution price at step `k` is
//!
//! ```text
//! S~_k = S_k - gamma * (x_0 - x_k) - eta . v_k
//! S_k  = S_{k-1} + sqrt(tau) * sigma * xi_k        (fundamental walk)
//! ```
//!
//! and the realized liquidation cost is `C = x_0'S_0 - sum_k delta_k'S~_k`.
//! The same `C` has the closed form
//!
//! ```text
//! C = -sqrt(tau) * sum_k x_{k-1}'sigma xi_k
//!     + x_0'gamma_s x_0 / 2
//!     + sum_k delta_k'(gamma_s/2 + eta/tau) delta_k,      gamma_s = (gamma + gamma')/2
//! ```
//!
//! which is an identity for symmetric `gamma` on any schedule, and for
//! general `gamma` on schedules whose trades are collinear (the linear
//! schedule in particular). For non-collinear trades under an asymmetric
//! `gamma` the direct sum and the symmetrized closed form genuinely differ;
//! the test suite pins down an explicit counterexample. All quadratic forms
//! below are insensitive to symmetrization, so they are evaluated with
//! `gamma` as given.
//!
//! Noise enters as explicit arguments rather than an internal RNG so that
//! the closed form can be replayed against the simulation on identical
//! draws; random generation lives in [`crate::montecarlo`].

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg;
use crate::market::{MarketParams, RiskLevel};
use crate::math;
use crate::schedule::Schedule;

/// One simulated execution path.
#[derive(Debug, Clone, PartialEq)]
pub struct PathRealization {
    noise: Vec<Vec<f64>>,
    exec_prices: Vec<Vec<f64>>,
    realized_cost: f64,
}

impl PathRealization {
    /// The standard normal draws `xi_1..xi_M` that drove the path.
    pub fn noise(&self) -> &[Vec<f64>] {
        &self.noise
    }

    /// Execution prices `S~_1..S~_M`.
    pub fn exec_prices(&self) -> &[Vec<f64>] {
        &self.exec_prices
    }

    /// Realized cost `x_0'S_0 - sum_k delta_k'S~_k`.
    pub fn realized_cost(&self) -> f64 {
        self.realized_cost
    }
}

/// Analytic moments of the liquidation cost for one schedule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostMoments {
    /// `E[C]`.
    pub mean: f64,
    /// `V[C] >= 0`.
    pub variance: f64,
    /// `E[C] + z_p * sqrt(V[C])`.
    pub var_p: f64,
}

fn check_schedule(params: &MarketParams, s: &Schedule) -> Result<()> {
    if s.num_assets() != params.num_assets() {
        return Err(Error::Dimension {
            what: "schedule assets",
            expected: params.num_assets(),
            got: s.num_assets(),
        });
    }
    Ok(())
}

fn check_noise(s: &Schedule, noise: &[Vec<f64>]) -> Result<()> {
    if noise.len() != s.num_steps() {
        return Err(Error::Dimension {
            what: "noise steps",
            expected: s.num_steps(),
            got: noise.len(),
        });
    }
    for step in noise {
        if step.len() != s.num_assets() {
            return Err(Error::Dimension {
                what: "noise assets",
                expected: s.num_assets(),
                got: step.len(),
            });
        }
        if !step.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite("noise"));
        }
    }
    Ok(())
}

/// Iterates the execution-price recursion over the given noise and records
/// prices and realized cost.
///
/// The unimpacted fundamental price is carried separately, so permanent
/// impact is always `gamma *` (cumulative shares sold) and temporary impact
/// applies only to the current step.
pub fn simulate_path(params: &MarketParams, s: &Schedule, noise: Vec<Vec<f64>>) -> Result<PathRealization> {
    check_schedule(params, s)?;
    check_noise(s, &noise)?;
    let n = params.num_assets();
    let sqrt_tau = math::sqrt(s.tau());
    let deltas = s.deltas();
    let speeds = s.speeds();

    let mut fundamental = params.s0().to_vec();
    let mut sold = vec![0.0; n];
    let mut exec_prices = Vec::with_capacity(noise.len());
    let mut proceeds = 0.0;
    for (k, xi) in noise.iter().enumerate() {
        let shock = linalg::mat_vec(params.sigma(), xi);
        for i in 0..n {
            fundamental[i] += sqrt_tau * shock[i];
            sold[i] += deltas[k][i];
        }
        let permanent = linalg::mat_vec(params.gamma(), &sold);
        let price: Vec<f64> = (0..n)
            .map(|i| fundamental[i] - permanent[i] - params.eta()[i] * speeds[k][i])
            .collect();
        proceeds += linalg::dot(&deltas[k], &price);
        exec_prices.push(price);
    }
    let realized_cost = linalg::dot(s.initial_position(), params.s0()) - proceeds;
    Ok(PathRealization {
        noise,
        exec_prices,
        realized_cost,
    })
}

/// Splits a path's realized cost by asset:
/// `C_i = x_0^i S_0^i - sum_k delta_k^i S~_k^i`.
///
/// The decomposition uses the same per-step prices as the total, so the
/// per-asset costs sum to the total up to reordering of the additions.
pub fn per_asset_costs(params: &MarketParams, s: &Schedule, path: &PathRealization) -> Result<Vec<f64>> {
    check_schedule(params, s)?;
    if path.exec_prices.len() != s.num_steps() {
        return Err(Error::Dimension {
            what: "path steps",
            expected: s.num_steps(),
            got: path.exec_prices.len(),
        });
    }
    let deltas = s.deltas();
    let x0 = s.initial_position();
    Ok((0..params.num_assets())
        .map(|i| {
            let proceeds: f64 = deltas
                .iter()
                .zip(&path.exec_prices)
                .map(|(d, p)| d[i] * p[i])
                .sum();
            x0[i] * params.s0()[i] - proceeds
        })
        .collect())
}

/// The closed-form realized cost on the same noise (see the module docs for
/// when this coincides with [`simulate_path`]).
pub fn realized_cost_closed(params: &MarketParams, s: &Schedule, noise: &[Vec<f64>]) -> Result<f64> {
    check_schedule(params, s)?;
    check_noise(s, noise)?;
    let sqrt_tau = math::sqrt(s.tau());
    let tau = s.tau();
    let positions = s.positions();

    let mut noise_term = 0.0;
    for (k, xi) in noise.iter().enumerate() {
        let shock = linalg::mat_vec(params.sigma(), xi);
        noise_term += linalg::dot(&positions[k], &shock);
    }
    let mut impact_term = 0.5 * params.gamma_quad(s.initial_position());
    for delta in s.deltas() {
        impact_term += 0.5 * params.gamma_quad(&delta) + params.eta_quad(&delta) / tau;
    }
    Ok(-sqrt_tau * noise_term + impact_term)
}

/// `E[C]`: the deterministic impact cost of the schedule.
pub fn expected_cost(params: &MarketParams, s: &Schedule) -> Result<f64> {
    check_schedule(params, s)?;
    let tau = s.tau();
    let mut total = 0.5 * params.gamma_quad(s.initial_position());
    for delta in s.deltas() {
        total += 0.5 * params.gamma_quad(&delta) + params.eta_quad(&delta) / tau;
    }
    Ok(total)
}

/// `V[C] = tau * sum_k x_{k-1}' sigma sigma' x_{k-1}`.
pub fn cost_variance(params: &MarketParams, s: &Schedule) -> Result<f64> {
    check_schedule(params, s)?;
    let positions = s.positions();
    let mut total = 0.0;
    for x in &positions[..positions.len() - 1] {
        total += params.covariance_quad(x);
    }
    Ok(s.tau() * total)
}

/// Assembles mean, variance and the value-at-risk objective
/// `VaR_p = E[C] + z_p sqrt(V[C])` for an arbitrary schedule.
pub fn var_p(params: &MarketParams, s: &Schedule, risk: &RiskLevel) -> Result<CostMoments> {
    let mean = expected_cost(params, s)?;
    let variance = cost_variance(params, s)?;
    Ok(CostMoments {
        mean,
        variance,
        var_p: mean + risk.z_p() * math::sqrt(variance),
    })
}

/// `VaR_p` of the linear schedule with `M` steps of length `tau`, evaluated
/// without materializing the schedule:
///
/// ```text
/// x_0'gamma x_0 / 2 + x_0'gamma x_0 / (2M) + x_0'eta x_0 / (tau M)
///   + z_p
///   * sqrt(tau * x_0'Sigma x_0 * (M/3)(1 + 1/M)(1 + 1/(2M)))
/// ```
///
/// This is the objective the discrete optimizer minimizes over `M`.
pub fn var_p_linear(params: &MarketParams, m: usize, tau: f64, risk: &RiskLevel) -> Result<f64> {
    if m < 1 {
        return Err(Error::InvalidStepCount);
    }
    if !tau.is_finite() || tau <= 0.0 {
        return Err(Error::InvalidTau(tau));
    }
    let x0 = params.x0();
    let mf = m as f64;
    let gamma_q = params.gamma_quad(x0);
    let eta_q = params.eta_quad(x0);
    let sigma_q = params.covariance_quad(x0);
    let variance = tau * sigma_q * (mf / 3.0) * (1.0 + 1.0 / mf) * (1.0 + 1.0 / (2.0 * mf));
    Ok(0.5 * gamma_q + gamma_q / (2.0 * mf) + eta_q / (tau * mf) + risk.z_p() * math::sqrt(variance))
}
