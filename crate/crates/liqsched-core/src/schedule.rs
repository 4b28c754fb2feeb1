//! Liquidation trajectories.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A discrete liquidation trajectory: positions `x_0, x_1, ..., x_M` held at
/// the ends of `M` trading intervals of length `tau`, with `x_M = 0`
/// (complete liquidation).
///
/// Arbitrary position lists are accepted so that non-linear trajectories can
/// be fed to the cost engine; the optimizer itself only ever uses the
/// constant-rate schedule from [`Schedule::linear`].
#[derive(Debug, Clone, PartialEq)]
pub struct Schedule {
    positions: Vec<Vec<f64>>,
    tau: f64,
}

impl Schedule {
    /// Validates and wraps an explicit position list.
    pub fn new(positions: Vec<Vec<f64>>, tau: f64) -> Result<Self> {
        if !tau.is_finite() || tau <= 0.0 {
            return Err(Error::InvalidTau(tau));
        }
        if positions.len() < 2 {
            return Err(Error::InvalidStepCount);
        }
        let n = positions[0].len();
        if n == 0 {
            return Err(Error::Dimension {
                what: "positions",
                expected: 1,
                got: 0,
            });
        }
        for row in &positions {
            if row.len() != n {
                return Err(Error::Dimension {
                    what: "positions",
                    expected: n,
                    got: row.len(),
                });
            }
            if !row.iter().all(|v| v.is_finite()) {
                return Err(Error::NonFinite("positions"));
            }
        }
        if positions[positions.len() - 1].iter().any(|&v| v != 0.0) {
            return Err(Error::NonzeroEndpoint);
        }
        Ok(Self { positions, tau })
    }

    /// The equal-interval, equal-quantity schedule:
    /// `x_k = x0 * (M - k) / M`, which hits zero exactly at step `M`.
    pub fn linear(x0: &[f64], m: usize, tau: f64) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidStepCount);
        }
        let steps = m as f64;
        let positions = (0..=m)
            .map(|k| {
                let factor = (m - k) as f64 / steps;
                x0.iter().map(|&x| x * factor).collect()
            })
            .collect();
        Self::new(positions, tau)
    }

    /// Positions `x_0 ..= x_M`.
    pub fn positions(&self) -> &[Vec<f64>] {
        &self.positions
    }

    /// The starting position `x_0`.
    pub fn initial_position(&self) -> &[f64] {
        &self.positions[0]
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// Number of trading intervals `M`.
    pub fn num_steps(&self) -> usize {
        self.positions.len() - 1
    }

    pub fn num_assets(&self) -> usize {
        self.positions[0].len()
    }

    /// Total horizon `T = tau * M`.
    pub fn horizon(&self) -> f64 {
        self.tau * self.num_steps() as f64
    }

    /// Trades `delta_k = x_{k-1} - x_k` for `k = 1..=M`; they telescope to
    /// `x_0`.
    pub fn deltas(&self) -> Vec<Vec<f64>> {
        self.positions
            .windows(2)
            .map(|w| w[0].iter().zip(&w[1]).map(|(a, b)| a - b).collect())
            .collect()
    }

    /// Selling speeds `v_k = delta_k / tau`.
    pub fn speeds(&self) -> Vec<Vec<f64>> {
        self.positions
            .windows(2)
            .map(|w| {
                w[0].iter()
                    .zip(&w[1])
                    .map(|(a, b)| (a - b) / self.tau)
                    .collect()
            })
            .collect()
    }
}
