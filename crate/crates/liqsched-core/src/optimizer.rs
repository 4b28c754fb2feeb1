//! Optimal liquidation horizons for the linear schedule family.
//!
//! Minimizing `VaR_p` over constant-rate schedules gives, in the
//! continuous-time limit,
//!
//! ```text
//! T* = (2 sqrt(3) x_0'eta x_0 / (z_p sqrt(x_0'Sigma x_0)))^(2/3)
//! ```
//!
//! which notably does not involve the permanent impact `gamma`. At a fixed
//! step length `tau`, the optimal *step count* solves a first-order
//! condition whose right-hand side is strictly increasing in `M`, so a
//! bracketed bisection finds the unique real root; `gamma` re-enters there
//! through a `1/M` term and vanishes again as `tau -> 0`.

use crate::cost;
use crate::error::{Error, Result};
use crate::market::{MarketParams, RiskLevel};
use crate::math;

/// An optimal-horizon result.
///
/// `m_star`/`m_real` are populated by the discrete solver only; the
/// continuous closed form reports just `t_star` and the objective value at
/// the optimum.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimalHorizon {
    /// Optimal horizon `T*` (time units). Zero when `x_0'eta x_0 = 0`:
    /// without temporary impact nothing penalizes instant liquidation.
    pub t_star: f64,
    /// Optimal integer step count at the requested `tau`, when solved
    /// discretely.
    pub m_star: Option<usize>,
    /// The real-valued root of the first-order condition, when solved
    /// discretely.
    pub m_real: Option<f64>,
    /// The `VaR_p` objective at the reported optimum.
    pub objective: f64,
}

/// The continuous-limit `VaR_p` of liquidating over horizon `t` at constant
/// rate.
fn continuous_objective(params: &MarketParams, t: f64, risk: &RiskLevel) -> f64 {
    let x0 = params.x0();
    0.5 * params.gamma_quad(x0)
        + params.eta_quad(x0) / t
        + risk.z_p() * math::sqrt(t * params.covariance_quad(x0) / 3.0)
}

fn check_positive_risk(risk: &RiskLevel) -> Result<()> {
    if risk.z_p() <= 0.0 {
        return Err(Error::DegenerateRisk(risk.z_p()));
    }
    Ok(())
}

/// Evaluates the closed-form optimal horizon `T*`.
///
/// Errors with [`Error::DegenerateRisk`] when `z_p <= 0` and
/// [`Error::DegenerateMarket`] when `x_0'Sigma x_0` is not positive. A zero
/// temporary-impact form is not an error: it yields the degenerate optimum
/// `T* = 0` (liquidate immediately), with the objective equal to the
/// residual permanent-impact cost.
pub fn optimal_time_closed(params: &MarketParams, risk: &RiskLevel) -> Result<OptimalHorizon> {
    check_positive_risk(risk)?;
    let x0 = params.x0();
    let sigma_q = params.covariance_quad(x0);
    if sigma_q <= 0.0 {
        return Err(Error::DegenerateMarket("x0' sigma sigma' x0"));
    }
    let eta_q = params.eta_quad(x0);
    if eta_q == 0.0 {
        return Ok(OptimalHorizon {
            t_star: 0.0,
            m_star: None,
            m_real: None,
            objective: 0.5 * params.gamma_quad(x0),
        });
    }
    let t_star = math::powf(
        2.0 * math::SQRT_3 * eta_q / (risk.z_p() * math::sqrt(sigma_q)),
        2.0 / 3.0,
    );
    Ok(OptimalHorizon {
        t_star,
        m_star: None,
        m_real: None,
        objective: continuous_objective(params, t_star, risk),
    })
}

/// The two-asset expansion of the closed form, written out in scalars:
///
/// ```text
/// T* = (2 sqrt(3) (x1^2 eta1 + x2^2 eta2) /
///       (z_p sqrt(x1^2 (s11^2 + s12^2)
///                 + 2 x1 x2 (s11 s21 + s12 s22)
///                 + x2^2 (s21^2 + s22^2))))^(2/3)
/// ```
///
/// Agrees with [`optimal_time_closed`] on the same data to rounding error.
pub fn optimal_time_two_asset(
    x0: [f64; 2],
    eta: [f64; 2],
    sigma: [[f64; 2]; 2],
    risk: &RiskLevel,
) -> Result<f64> {
    check_positive_risk(risk)?;
    let flat = [
        x0[0], x0[1], eta[0], eta[1], sigma[0][0], sigma[0][1], sigma[1][0], sigma[1][1],
    ];
    if !flat.iter().all(|v| v.is_finite()) {
        return Err(Error::NonFinite("two-asset parameters"));
    }
    if eta[0] < 0.0 {
        return Err(Error::NegativeEta { index: 0 });
    }
    if eta[1] < 0.0 {
        return Err(Error::NegativeEta { index: 1 });
    }
    let [x1, x2] = x0;
    let [[s11, s12], [s21, s22]] = sigma;
    let eta_q = x1 * x1 * eta[0] + x2 * x2 * eta[1];
    let sigma_q = x1 * x1 * (s11 * s11 + s12 * s12)
        + 2.0 * x1 * x2 * (s11 * s21 + s12 * s22)
        + x2 * x2 * (s21 * s21 + s22 * s22);
    if sigma_q <= 0.0 {
        return Err(Error::DegenerateMarket("x0' sigma sigma' x0"));
    }
    if eta_q == 0.0 {
        return Ok(0.0);
    }
    Ok(math::powf(
        2.0 * math::SQRT_3 * eta_q / (risk.z_p() * math::sqrt(sigma_q)),
        2.0 / 3.0,
    ))
}

/// Right-hand side of the discrete first-order condition; strictly
/// increasing for `M >= 1`.
fn foc_rhs(m: f64) -> f64 {
    (m * m - 0.5) / (2.0 * math::sqrt(m + 1.0 / (2.0 * m) + 1.5))
}

/// Solves the discrete first-order condition for the optimal step count at
/// fixed `tau`:
///
/// ```text
/// sqrt(3) x_0'(gamma_s/2 + eta/tau) x_0 / (z_p sqrt(tau x_0'Sigma x_0))
///   = (M^2 - 1/2) / (2 sqrt(M + 1/(2M) + 3/2))
/// ```
///
/// The root is bracketed by doubling and polished by bisection to `1e-10`
/// on `M`; the returned integer `m_star` is whichever of `floor(M*)` /
/// `ceil(M*)` has the smaller [`cost::var_p_linear`], ties going to the
/// smaller count. Errors with [`Error::NoInteriorMinimum`] when the
/// objective is already increasing at `M = 1`, i.e. the optimum is a single
/// step.
pub fn optimal_steps_discrete(params: &MarketParams, tau: f64, risk: &RiskLevel) -> Result<OptimalHorizon> {
    if !tau.is_finite() || tau <= 0.0 {
        return Err(Error::InvalidTau(tau));
    }
    check_positive_risk(risk)?;
    let x0 = params.x0();
    let sigma_q = params.covariance_quad(x0);
    if sigma_q <= 0.0 {
        return Err(Error::DegenerateMarket("x0' sigma sigma' x0"));
    }
    let impact_q = 0.5 * params.gamma_quad(x0) + params.eta_quad(x0) / tau;
    let lhs = math::SQRT_3 * impact_q / (risk.z_p() * math::sqrt(tau * sigma_q));
    if lhs < foc_rhs(1.0) {
        return Err(Error::NoInteriorMinimum);
    }

    let mut lo = 1.0_f64;
    let mut hi = 2.0_f64;
    let mut guard = 0;
    while foc_rhs(hi) < lhs {
        lo = hi;
        hi *= 2.0;
        guard += 1;
        if guard > 1100 || !hi.is_finite() {
            return Err(Error::DegenerateMarket("first-order condition bracket"));
        }
    }
    let mut iterations = 0;
    while hi - lo > 1e-10 {
        let mid = 0.5 * (lo + hi);
        if foc_rhs(mid) < lhs {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
        if iterations > 2000 {
            break;
        }
    }
    let root = 0.5 * (lo + hi);

    let m_lo = if math::floor(root) < 1.0 { 1 } else { math::floor(root) as usize };
    let m_hi = math::ceil(root) as usize;
    let value_lo = cost::var_p_linear(params, m_lo, tau, risk)?;
    let (m_star, objective) = if m_hi > m_lo {
        let value_hi = cost::var_p_linear(params, m_hi, tau, risk)?;
        if value_hi < value_lo {
            (m_hi, value_hi)
        } else {
            (m_lo, value_lo)
        }
    } else {
        (m_lo, value_lo)
    };
    Ok(OptimalHorizon {
        t_star: tau * m_star as f64,
        m_star: Some(m_star),
        m_real: Some(root),
        objective,
    })
}
