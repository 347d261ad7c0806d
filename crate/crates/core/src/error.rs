use thiserror::Error;

/// Errors raised by the scattering model and its numerical oracles.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("angle {value} outside [0, pi]")]
    PolarAngleOutOfRange { value: f64 },

    #[error("channel partition requires saturation = 0, got {saturation}")]
    UnsupportedRegime { saturation: f64 },

    #[error(
        "quadrature did not converge: error estimate {estimate:e} exceeds tolerance {tolerance:e} (value {value})"
    )]
    QuadratureNonConvergence { value: f64, estimate: f64, tolerance: f64 },

    #[error("spectrum has {got} samples but the transform grid expects {expected}")]
    GridMismatch { expected: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
