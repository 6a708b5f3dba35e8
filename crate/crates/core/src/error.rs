use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("coin angle {0} is outside the open interval (0, pi/2)")]
    BetaOutOfRange(f64),

    #[error("initial coin state has squared norm {0}, expected 1")]
    NotNormalized(f64),

    #[error("wavenumber {0} is outside [0, 2pi)")]
    WavenumberOutOfRange(f64),

    #[error(
        "quadrature did not converge: successive estimates differ by {achieved:.3e} \
         (tolerance {tolerance:.3e}) after {panels} panels"
    )]
    QuadratureNotConverged {
        achieved: f64,
        tolerance: f64,
        panels: usize,
    },

    #[error("invalid quadrature settings: {0}")]
    InvalidQuadrature(String),

    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
