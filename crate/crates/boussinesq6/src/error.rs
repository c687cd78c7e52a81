//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by grid construction, solvers and probe sweeps.
#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on an argument was violated.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Two fields that must live on the same grid do not.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// A probe spec cannot be realised (grid cannot cover the support, ...).
    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    /// Convolution support leaked past the grid span.
    #[error("convolution support not contained in grid: discarded mass {discarded:.3e} (relative)")]
    ConvolutionOverflow { discarded: f64 },

    /// Picard iteration failed to contract within the allowed iterations.
    ///
    /// Carries the last two successive-trajectory residuals; a ratio near or
    /// above one signals that the requested final time is too large for the
    /// data size.
    #[error(
        "Picard iteration did not contract after {iters} iterations \
         (last residuals {previous:.3e} -> {last:.3e}); try a smaller T"
    )]
    NoContraction {
        iters: usize,
        previous: f64,
        last: f64,
    },

    /// Time stepper blew up (norm growth beyond the instability threshold).
    #[error("time-stepping instability at t = {t:.6}: norm grew to {norm:.3e}")]
    Instability { t: f64, norm: f64 },

    /// Configuration file / flag parsing problem.
    #[error("config error: {0}")]
    Config(String),

    /// Underlying I/O failure.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid_argument(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn invalid_spec(msg: impl Into<String>) -> Self {
        Error::InvalidSpec(msg.into())
    }
}
