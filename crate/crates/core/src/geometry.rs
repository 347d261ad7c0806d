//! Dipole emission patterns and the pattern-weighted solid-angle fraction
//! covered by a focusing aperture.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::numerics::{integrate_2d_checked, QuadratureResult, QuadratureSpec};

/// Full-sphere integral of every supported pattern.
pub const FULL_SPHERE_WEIGHT: f64 = 8.0 * PI / 3.0;

/// Angular intensity pattern of the atomic transition dipole.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DipolePattern {
    /// π transition, `sin²θ`.
    #[default]
    LinearDipole,
    /// σ± transition, `(1 + cos²θ) / 2`.
    CircularDipole,
}

impl DipolePattern {
    pub fn intensity(self, theta: f64) -> f64 {
        let c = theta.cos();
        match self {
            DipolePattern::LinearDipole => 1.0 - c * c,
            DipolePattern::CircularDipole => 0.5 * (1.0 + c * c),
        }
    }
}

impl fmt::Display for DipolePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DipolePattern::LinearDipole => "linear",
            DipolePattern::CircularDipole => "circular",
        })
    }
}

impl FromStr for DipolePattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "linear" | "pi" | "lineardipole" => Ok(DipolePattern::LinearDipole),
            "circular" | "sigma" | "circulardipole" => Ok(DipolePattern::CircularDipole),
            other => Err(invalid(
                "pattern",
                format!("unknown dipole pattern `{other}` (expected linear or circular)"),
            )),
        }
    }
}

/// Region of the sphere covered by the focusing optics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularAperture {
    theta_min: f64,
    theta_max: f64,
    phi_min: f64,
    phi_max: f64,
}

impl AngularAperture {
    pub fn new(theta_min: f64, theta_max: f64, phi_min: f64, phi_max: f64) -> Result<Self> {
        let all_finite = [theta_min, theta_max, phi_min, phi_max].iter().all(|v| v.is_finite());
        if !all_finite {
            return Err(invalid("aperture", "angles must be finite"));
        }
        if theta_min < 0.0 {
            return Err(invalid("theta_min", format!("must be >= 0, got {theta_min}")));
        }
        if theta_max > PI {
            return Err(invalid("theta_max", format!("must be <= pi, got {theta_max}")));
        }
        if theta_min > theta_max {
            return Err(invalid(
                "theta_min",
                format!("{theta_min} exceeds theta_max {theta_max}"),
            ));
        }
        let span = phi_max - phi_min;
        if span < 0.0 {
            return Err(invalid("phi_min", format!("{phi_min} exceeds phi_max {phi_max}")));
        }
        if span > TAU {
            return Err(invalid("phi_max", format!("azimuthal span {span} exceeds 2 pi")));
        }
        Ok(Self {
            theta_min,
            theta_max,
            phi_min,
            phi_max,
        })
    }

    pub fn full_sphere() -> Self {
        Self::new(0.0, PI, 0.0, TAU).expect("static aperture")
    }

    /// Polar cap `θ ∈ [0, theta_max]` over all azimuths.
    pub fn cap(theta_max: f64) -> Result<Self> {
        Self::new(0.0, theta_max, 0.0, TAU)
    }

    pub fn theta(&self) -> (f64, f64) {
        (self.theta_min, self.theta_max)
    }

    pub fn phi(&self) -> (f64, f64) {
        (self.phi_min, self.phi_max)
    }
}

pub fn dipole_intensity(pattern: DipolePattern, theta: f64, _phi: f64) -> Result<f64> {
    if !(0.0..=PI).contains(&theta) {
        return Err(Error::PolarAngleOutOfRange { value: theta });
    }
    Ok(pattern.intensity(theta))
}

/// Ω: the pattern-weighted solid angle of `aperture`, normalized by 8π/3.
///
/// The value is reported unclamped; `error_estimate` is in the same
/// normalized units and is checked against `quad.tolerance`.
pub fn weighted_solid_angle(
    pattern: DipolePattern,
    aperture: &AngularAperture,
    quad: QuadratureSpec,
) -> Result<QuadratureResult> {
    let raw = integrate_2d_checked(
        |theta, _phi| pattern.intensity(theta) * theta.sin() / FULL_SPHERE_WEIGHT,
        aperture.theta(),
        aperture.phi(),
        quad,
    )?;
    Ok(raw)
}
