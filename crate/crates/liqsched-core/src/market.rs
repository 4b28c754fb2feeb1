//! Market parameters, risk levels, covariance and correlation measures.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg;
use crate::math;

/// A confidence level together with its standard normal quantile.
///
/// The value-at-risk objective charges `z_p` standard deviations of cost on
/// top of the expectation; `z_p = Phi^-1(p)`. Levels at or below 0.5 give
/// `z_p <= 0` and are rejected by the optimizer (no interior minimum), but
/// are representable here so that the cost engine can evaluate them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiskLevel {
    p: f64,
    z_p: f64,
}

impl RiskLevel {
    /// Default confidence level for the value-at-risk objective.
    pub const DEFAULT_CONFIDENCE: f64 = 0.99;

    /// Builds a risk level from a confidence `p` strictly inside (0, 1).
    pub fn from_confidence(p: f64) -> Result<Self> {
        if !p.is_finite() || p <= 0.0 || p >= 1.0 {
            return Err(Error::InvalidConfidence(p));
        }
        Ok(Self {
            p,
            z_p: math::normal_quantile(p),
        })
    }

    /// Builds a risk level directly from a quantile `z_p`; `p = Phi(z_p)`.
    pub fn from_quantile(z_p: f64) -> Result<Self> {
        if !z_p.is_finite() {
            return Err(Error::NonFinite("z_p"));
        }
        Ok(Self {
            p: math::normal_cdf(z_p),
            z_p,
        })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn z_p(&self) -> f64 {
        self.z_p
    }
}

impl Default for RiskLevel {
    fn default() -> Self {
        Self::from_confidence(Self::DEFAULT_CONFIDENCE).unwrap()
    }
}

/// Immutable description of an `N`-asset market and the position to unwind.
///
/// * `s0` — initial prices (currency per share).
/// * `x0` — initial holdings (shares).
/// * `sigma` — `N x N` volatility component matrix; the covariance of the
///   per-step price shocks is `sigma * sigma'`.
/// * `gamma` — `N x N` permanent impact matrix (currency per share). May be
///   asymmetric; only its symmetric part enters any cost, and the cost
///   engine documents where that matters.
/// * `eta` — temporary impact coefficients, one per asset, all `>= 0`
///   (currency per share per unit of speed); the diagonal of the temporary
///   impact matrix.
///
/// All entries must be finite and every dimension must agree. Instances are
/// immutable after construction and freely shareable across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct MarketParams {
    n: usize,
    s0: Vec<f64>,
    x0: Vec<f64>,
    sigma: Vec<Vec<f64>>,
    gamma: Vec<Vec<f64>>,
    eta: Vec<f64>,
}

fn check_finite(values: &[f64], what: &'static str) -> Result<()> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite(what))
    }
}

fn check_matrix(m: &[Vec<f64>], n: usize, what: &'static str) -> Result<()> {
    if m.len() != n {
        return Err(Error::Dimension {
            what,
            expected: n,
            got: m.len(),
        });
    }
    for row in m {
        if row.len() != n {
            return Err(Error::Dimension {
                what,
                expected: n,
                got: row.len(),
            });
        }
        check_finite(row, what)?;
    }
    Ok(())
}

impl MarketParams {
    pub fn new(
        s0: Vec<f64>,
        x0: Vec<f64>,
        sigma: Vec<Vec<f64>>,
        gamma: Vec<Vec<f64>>,
        eta: Vec<f64>,
    ) -> Result<Self> {
        let n = s0.len();
        if n == 0 {
            return Err(Error::Dimension {
                what: "s0",
                expected: 1,
                got: 0,
            });
        }
        if x0.len() != n {
            return Err(Error::Dimension {
                what: "x0",
                expected: n,
                got: x0.len(),
            });
        }
        if eta.len() != n {
            return Err(Error::Dimension {
                what: "eta",
                expected: n,
                got: eta.len(),
            });
        }
        check_finite(&s0, "s0")?;
        check_finite(&x0, "x0")?;
        check_finite(&eta, "eta")?;
        check_matrix(&sigma, n, "sigma")?;
        check_matrix(&gamma, n, "gamma")?;
        if let Some(index) = eta.iter().position(|&e| e < 0.0) {
            return Err(Error::NegativeEta { index });
        }
        Ok(Self {
            n,
            s0,
            x0,
            sigma,
            gamma,
            eta,
        })
    }

    pub fn num_assets(&self) -> usize {
        self.n
    }

    pub fn s0(&self) -> &[f64] {
        &self.s0
    }

    pub fn x0(&self) -> &[f64] {
        &self.x0
    }

    pub fn sigma(&self) -> &[Vec<f64>] {
        &self.sigma
    }

    pub fn gamma(&self) -> &[Vec<f64>] {
        &self.gamma
    }

    pub fn eta(&self) -> &[f64] {
        &self.eta
    }

    /// Covariance of the per-step price shocks, `sigma * sigma'`.
    ///
    /// Each entry is computed once and mirrored, so the result is exactly
    /// symmetric.
    pub fn covariance(&self) -> Vec<Vec<f64>> {
        let n = self.n;
        let mut cov = vec![vec![0.0; n]; n];
        #[allow(clippy::needless_range_loop)] // writes (i,j) and (j,i) per pass
        for i in 0..n {
            for j in i..n {
                let v = linalg::dot(&self.sigma[i], &self.sigma[j]);
                cov[i][j] = v;
                cov[j][i] = v;
            }
        }
        cov
    }

    /// Volatility of asset `i` (0-based): the Euclidean norm of row `i` of
    /// `sigma`, i.e. the square root of the covariance diagonal.
    pub fn asset_volatility(&self, i: usize) -> Result<f64> {
        if i >= self.n {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.n,
            });
        }
        Ok(math::sqrt(linalg::dot(&self.sigma[i], &self.sigma[i])))
    }

    /// The component-product correlation measure used by the bundled
    /// experiment presets (two assets only):
    ///
    /// `rho = (sigma11*sigma22 + sigma12*sigma21) / (vol1 * vol2)`.
    ///
    /// This is *not* the covariance-based correlation — see
    /// [`correlation_standard`](Self::correlation_standard) for that — and it
    /// is not confined to [-1, 1]. The two agree exactly whenever
    /// `sigma21 == sigma22`.
    pub fn correlation_paper(&self) -> Result<f64> {
        let denom = self.two_asset_vol_product("correlation_paper")?;
        let s = &self.sigma;
        Ok((s[0][0] * s[1][1] + s[0][1] * s[1][0]) / denom)
    }

    /// The covariance-based correlation of the two assets' price shocks:
    /// `Sigma12 / (vol1 * vol2)`, always in [-1, 1].
    pub fn correlation_standard(&self) -> Result<f64> {
        let denom = self.two_asset_vol_product("correlation_standard")?;
        let s = &self.sigma;
        Ok((s[0][0] * s[1][0] + s[0][1] * s[1][1]) / denom)
    }

    fn two_asset_vol_product(&self, what: &'static str) -> Result<f64> {
        if self.n != 2 {
            return Err(Error::Dimension {
                what,
                expected: 2,
                got: self.n,
            });
        }
        let denom = self.asset_volatility(0)? * self.asset_volatility(1)?;
        if denom <= 0.0 {
            return Err(Error::DegenerateVolatility);
        }
        Ok(denom)
    }

    /// `x' eta x` (eta as a diagonal matrix). Non-negative by construction.
    pub(crate) fn eta_quad(&self, x: &[f64]) -> f64 {
        linalg::diag_quad_form(x, &self.eta)
    }

    /// `x' gamma x`; identical to the quadratic form of the symmetrized
    /// gamma.
    pub(crate) fn gamma_quad(&self, x: &[f64]) -> f64 {
        linalg::quad_form(x, &self.gamma)
    }

    /// `x' sigma sigma' x`, evaluated as `|sigma' x|^2` so it is
    /// non-negative even in floating point.
    pub(crate) fn covariance_quad(&self, x: &[f64]) -> f64 {
        (0..self.n)
            .map(|j| {
                let col: f64 = self.sigma.iter().zip(x).map(|(row, xi)| row[j] * xi).sum();
                col * col
            })
            .sum()
    }
}

/// Cholesky factorization: the lower-triangular `L` with `L L' = cov` and a
/// strictly positive diagonal.
///
/// Only the lower triangle of the input is read; symmetry is the caller's
/// contract. A pivot at or below `1e-12 x` the largest diagonal entry fails
/// with [`Error::NotPositiveDefinite`], flagging an inadmissible covariance.
pub fn cholesky(cov: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let n = cov.len();
    if n == 0 {
        return Err(Error::Dimension {
            what: "cholesky",
            expected: 1,
            got: 0,
        });
    }
    check_matrix(cov, n, "cholesky")?;
    let mut max_diag = 0.0_f64;
    for (i, row) in cov.iter().enumerate() {
        if row[i] > max_diag {
            max_diag = row[i];
        }
    }
    let tolerance = 1e-12 * max_diag;
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = cov[i][j];
            #[allow(clippy::needless_range_loop)] // textbook index form
            for k in 0..j {
                s -= l[i][k] * l[j][k];
            }
            if i == j {
                if s <= tolerance {
                    return Err(Error::NotPositiveDefinite { pivot: i });
                }
                l[i][j] = math::sqrt(s);
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    Ok(l)
}
