//! Error type shared by every module.

use core::fmt;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Validation and degeneracy errors.
///
/// Constructors and operations return these instead of panicking; anything
/// that reaches a formula has been dimension-checked at the boundary.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A vector or matrix did not have the expected size.
    Dimension {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    /// A parameter contained NaN or an infinity.
    NonFinite(&'static str),
    /// Temporary impact coefficients must be non-negative.
    NegativeEta { index: usize },
    /// A Cholesky pivot fell at or below tolerance: the matrix is not
    /// positive definite.
    NotPositiveDefinite { pivot: usize },
    /// Asset index out of range.
    IndexOutOfRange { index: usize, len: usize },
    /// A correlation was requested but at least one asset has zero
    /// volatility.
    DegenerateVolatility,
    /// Confidence level outside (0, 1).
    InvalidConfidence(f64),
    /// Step count `M` must be at least 1.
    InvalidStepCount,
    /// Step length `tau` must be positive and finite.
    InvalidTau(f64),
    /// Replication count must be at least 1.
    InvalidReplications,
    /// A schedule must liquidate completely: its final position is not the
    /// zero vector.
    NonzeroEndpoint,
    /// The risk quantile `z_p` is not positive, so the value-at-risk
    /// objective has no interior minimum in the horizon.
    DegenerateRisk(f64),
    /// A quadratic form that the requested operation needs to be positive
    /// was zero or negative.
    DegenerateMarket(&'static str),
    /// The discrete objective is already increasing at `M = 1`; the optimum
    /// is immediate liquidation in a single step.
    NoInteriorMinimum,
    /// The initial portfolio value `x0'S0` must be positive to form cost
    /// rates.
    ZeroNotional,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Dimension {
                what,
                expected,
                got,
            } => write!(f, "dimension mismatch in {what}: expected {expected}, got {got}"),
            Error::NonFinite(what) => write!(f, "non-finite value in {what}"),
            Error::NegativeEta { index } => {
                write!(f, "temporary impact eta[{index}] is negative")
            }
            Error::NotPositiveDefinite { pivot } => write!(
                f,
                "matrix is not positive definite: pivot {pivot} at or below tolerance"
            ),
            Error::IndexOutOfRange { index, len } => {
                write!(f, "asset index {index} out of range for {len} assets")
            }
            Error::DegenerateVolatility => {
                write!(f, "degenerate volatility: both asset volatilities must be positive")
            }
            Error::InvalidConfidence(p) => {
                write!(f, "confidence level must lie strictly inside (0, 1), got {p}")
            }
            Error::InvalidStepCount => write!(f, "step count M must be at least 1"),
            Error::InvalidTau(tau) => {
                write!(f, "step length tau must be positive and finite, got {tau}")
            }
            Error::InvalidReplications => write!(f, "replication count must be at least 1"),
            Error::NonzeroEndpoint => {
                write!(f, "schedule must liquidate fully: final position is not zero")
            }
            Error::DegenerateRisk(z) => write!(
                f,
                "risk quantile z_p must be positive for an interior optimum, got {z}"
            ),
            Error::DegenerateMarket(what) => {
                write!(f, "degenerate market input: {what} must be positive")
            }
            Error::NoInteriorMinimum => write!(
                f,
                "no interior minimum: the cost objective is already increasing at M = 1"
            ),
            Error::ZeroNotional => {
                write!(f, "initial portfolio value x0'S0 must be positive")
            }
        }
    }
}

impl core::error::Error for Error {}
