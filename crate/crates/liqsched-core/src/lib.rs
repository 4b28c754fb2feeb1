//! Discrete-time portfolio liquidation under linear price impact.
//!
//! The model: `N` correlated assets follow an arithmetic random walk. Selling
//! moves prices against the seller in two ways — a *permanent* component
//! proportional to cumulative shares sold (matrix `gamma`) and a *temporary*
//! component proportional to the instantaneous selling speed (diagonal
//! `eta`). Liquidating a position `x0` over `M` steps of length `tau`
//! realizes a random cost `C`: the initial mark-to-market value minus the
//! sale proceeds at impacted execution prices.
//!
//! The crate provides
//!
//! * [`market`] — model parameters, covariance/Cholesky, volatilities and the
//!   two-asset correlation measures;
//! * [`schedule`] — liquidation trajectories, in particular the constant-rate
//!   (linear) schedule;
//! * [`cost`] — execution-price simulation, the closed-form realized cost,
//!   and the analytic mean / variance / value-at-risk of `C`;
//! * [`optimizer`] — the closed-form optimal horizon `T*`, its two-asset
//!   expansion, and the discrete optimal step count at fixed `tau`;
//! * [`montecarlo`] — seeded, reproducible replication experiments and the
//!   cost-rate summary statistics.
//!
//! Everything is `no_std` (with `alloc`); float intrinsics route through
//! `libm`. File formats, the CLI and the sweep harness live in the
//! companion crate `liqsched`.
//!
//! # Example
//!
//! ```
//! use liqsched_core::{MarketParams, RiskLevel};
//! use liqsched_core::optimizer::optimal_time_closed;
//!
//! let params = MarketParams::new(
//!     vec![50.0, 100.0],                                // prices
//!     vec![1.0e7, 8.0e6],                               // shares to sell
//!     vec![vec![0.08, 0.02], vec![0.1, 0.03]],          // volatility components
//!     vec![vec![3.0e-9, 1.0e-9], vec![2.0e-9, 5.0e-9]], // permanent impact
//!     vec![3.0e-8, 5.0e-8],                             // temporary impact
//! )
//! .unwrap();
//! let risk = RiskLevel::from_confidence(0.99).unwrap();
//! let opt = optimal_time_closed(&params, &risk).unwrap();
//! assert!((opt.t_star - 3.14).abs() < 0.01);
//! ```

#![no_std]
#![forbid(unsafe_code)]
// Pinned numeric constants (quantile coefficients, oracle values in tests)
// keep their full published digits even where f64 rounds them.
#![allow(clippy::excessive_precision)]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod linalg;
mod math;

pub mod cost;
pub mod error;
pub mod market;
pub mod montecarlo;
pub mod optimizer;
pub mod schedule;

pub use cost::{CostMoments, PathRealization};
pub use error::{Error, Result};
pub use market::{cholesky, MarketParams, RiskLevel};
pub use montecarlo::{McConfig, McSummary, Replication};
pub use optimizer::OptimalHorizon;
pub use schedule::Schedule;

/// Parameters shared by several test modules: the two-asset base case used
/// throughout the documentation.
#[cfg(test)]
pub(crate) mod testutil {
    use alloc::vec;

    use crate::market::MarketParams;

    pub fn base_params() -> MarketParams {
        MarketParams::new(
            vec![50.0, 100.0],
            vec![1.0e7, 8.0e6],
            vec![vec![0.08, 0.02], vec![0.1, 0.03]],
            vec![vec![3.0e-9, 1.0e-9], vec![2.0e-9, 5.0e-9]],
            vec![3.0e-8, 5.0e-8],
        )
        .unwrap()
    }
}
