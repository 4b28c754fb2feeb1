//! CLI-level error type with process exit-code classification.

use std::fmt;

pub type Result<T> = std::result::Result<T, Error>;

/// What went wrong, bucketed by exit code: bad input is the caller's
/// problem (2), a degenerate model is the data's problem (3), and anything
/// environmental is an I/O failure (1).
#[derive(Debug)]
pub enum Error {
    /// Malformed or inconsistent input: JSON syntax, dimensions, ranges.
    Validation(String),
    /// Structurally valid input whose numbers admit no answer: non-PD
    /// covariance, zero volatility, no interior optimum.
    Degenerate(String),
    /// An SVG kind that cannot render this sweep's shape.
    UnsupportedKind { kind: &'static str, axes: usize },
    /// Filesystem or serialization machinery failure.
    Io(String),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Validation(_) | Error::UnsupportedKind { .. } => 2,
            Error::Degenerate(_) => 3,
            Error::Io(_) => 1,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Validation(msg) => write!(f, "invalid input: {msg}"),
            Error::Degenerate(msg) => write!(f, "degenerate model: {msg}"),
            Error::UnsupportedKind { kind, axes } => {
                write!(f, "unsupported SVG kind `{kind}` for a {axes}-axis sweep")
            }
            Error::Io(msg) => write!(f, "i/o error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<liqsched_core::Error> for Error {
    fn from(e: liqsched_core::Error) -> Self {
        use liqsched_core::Error as Core;
        let msg = e.to_string();
        match e {
            Core::Dimension { .. }
            | Core::NonFinite(_)
            | Core::NegativeEta { .. }
            | Core::IndexOutOfRange { .. }
            | Core::InvalidConfidence(_)
            | Core::InvalidStepCount
            | Core::InvalidTau(_)
            | Core::InvalidReplications
            | Core::NonzeroEndpoint => Error::Validation(msg),
            Core::NotPositiveDefinite { .. }
            | Core::DegenerateVolatility
            | Core::DegenerateRisk(_)
            | Core::DegenerateMarket(_)
            | Core::NoInteriorMinimum
            | Core::ZeroNotional => Error::Degenerate(msg),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        // Parse and shape problems are the caller's input, not our plumbing.
        if e.is_io() {
            Error::Io(e.to_string())
        } else {
            Error::Validation(e.to_string())
        }
    }
}
