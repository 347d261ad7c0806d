//! Steady-state response of the atom to a monochromatic drive: scattered
//! power, the scattered-wave phase, and the split of the outgoing light into
//! the coherent (forward, interfering), incoherent (forward, orthogonal mode)
//! and backward (uncovered solid angle) channels.
//!
//! Amplitudes follow `A = √P`; powers and amplitudes share arbitrary units.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};

/// Atomic linewidth Γ. Detunings and times are measured in the same units
/// (Γ = 1 for normalized units).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomParams {
    gamma: f64,
}

impl AtomParams {
    pub fn new(gamma: f64) -> Result<Self> {
        if gamma.is_nan() || gamma <= 0.0 || gamma.is_infinite() {
            return Err(invalid("gamma", format!("must be positive and finite, got {gamma}")));
        }
        Ok(Self { gamma })
    }

    pub fn normalized() -> Self {
        Self { gamma: 1.0 }
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// `Δ² + Γ²/4`, the Lorentzian denominator shared by every channel.
    pub fn lorentz_denominator(&self, delta: f64) -> f64 {
        delta * delta + 0.25 * self.gamma * self.gamma
    }
}

impl Default for AtomParams {
    fn default() -> Self {
        Self::normalized()
    }
}

/// Weighted solid-angle fraction Ω and spatial mode overlap η.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingParams {
    omega: f64,
    eta: f64,
}

impl CouplingParams {
    pub fn new(omega: f64, eta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&omega) {
            return Err(invalid("omega", format!("must lie in [0, 1], got {omega}")));
        }
        if !(0.0..=1.0).contains(&eta) {
            return Err(invalid("eta", format!("must lie in [0, 1], got {eta}")));
        }
        Ok(Self { omega, eta })
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// Ωη².
    pub fn coupling_strength(&self) -> f64 {
        self.omega * self.eta * self.eta
    }
}

/// Incident beam: power P, global phase φ0, and saturation parameter s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveParams {
    power: f64,
    phi0: f64,
    saturation: f64,
}

impl DriveParams {
    pub fn new(power: f64, phi0: f64, saturation: f64) -> Result<Self> {
        if power.is_nan() || power < 0.0 || power.is_infinite() {
            return Err(invalid(
                "power",
                format!("must be non-negative and finite, got {power}"),
            ));
        }
        if !phi0.is_finite() {
            return Err(invalid("phi0", format!("must be finite, got {phi0}")));
        }
        if saturation.is_nan() || saturation < 0.0 || saturation.is_infinite() {
            return Err(invalid(
                "saturation",
                format!("must be non-negative and finite, got {saturation}"),
            ));
        }
        Ok(Self {
            power,
            phi0,
            saturation,
        })
    }

    /// Elastic drive with field modulus `amplitude` and phase `phase`.
    pub fn from_amplitude(amplitude: f64, phase: f64) -> Result<Self> {
        if amplitude.is_nan() || amplitude < 0.0 {
            return Err(invalid("amplitude", format!("must be non-negative, got {amplitude}")));
        }
        Self::new(amplitude * amplitude, phase, 0.0)
    }

    pub fn power(&self) -> f64 {
        self.power
    }

    pub fn amplitude(&self) -> f64 {
        self.power.sqrt()
    }

    pub fn phi0(&self) -> f64 {
        self.phi0
    }

    pub fn saturation(&self) -> f64 {
        self.saturation
    }

    fn require_elastic(&self) -> Result<()> {
        if self.saturation != 0.0 {
            return Err(Error::UnsupportedRegime {
                saturation: self.saturation,
            });
        }
        Ok(())
    }
}

/// Complex field amplitudes of the three output channels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelFields {
    pub coherent: Complex64,
    pub incoherent: Complex64,
    pub backward: Complex64,
}

impl ChannelFields {
    pub fn powers(&self) -> ChannelPowers {
        ChannelPowers {
            coherent: self.coherent.norm_sqr(),
            incoherent: self.incoherent.norm_sqr(),
            backward: self.backward.norm_sqr(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelPowers {
    pub coherent: f64,
    pub incoherent: f64,
    pub backward: f64,
}

impl ChannelPowers {
    pub fn total(&self) -> f64 {
        self.coherent + self.incoherent + self.backward
    }
}

/// Saturated scattered power `4PΩη² / ((4Δ²/Γ² + 1)(1 + s)²)`.
pub fn scattered_power(power: f64, coupling: CouplingParams, delta: f64, atom: AtomParams, saturation: f64) -> f64 {
    let x = 2.0 * delta / atom.gamma();
    let sat = 1.0 + saturation;
    4.0 * power * coupling.coupling_strength() / ((x * x + 1.0) * sat * sat)
}

/// Phase of the scattered wave relative to the incident field,
/// `arctan(2Δ/Γ) + π/2`, plus another π/2 in the forward direction where the
/// incident beam picks up its Gouy shift.
pub fn scattered_phase(delta: f64, atom: AtomParams, gouy: bool) -> f64 {
    let base = (2.0 * delta / atom.gamma()).atan() + FRAC_PI_2;
    if gouy {
        base + FRAC_PI_2
    } else {
        base
    }
}

/// Field amplitudes of the three channels. `φ0` multiplies every channel.
pub fn channel_fields(
    drive: DriveParams,
    coupling: CouplingParams,
    delta: f64,
    atom: AtomParams,
) -> Result<ChannelFields> {
    drive.require_elastic()?;
    let gamma = atom.gamma();
    let (omega, eta) = (coupling.omega(), coupling.eta());
    let a = drive.amplitude();
    let root = atom.lorentz_denominator(delta).sqrt();

    let scattered = Complex64::from_polar(a, scattered_phase(delta, atom, false) + drive.phi0());
    let forward = Complex64::from_polar(a, scattered_phase(delta, atom, true) + drive.phi0());
    let incident = Complex64::from_polar(a, drive.phi0());

    let backward = scattered * (gamma * eta * (omega * (1.0 - omega)).sqrt() / root);
    let incoherent = scattered * (gamma * omega * eta * (1.0 - eta * eta).sqrt() / root);
    let coherent = forward * (gamma * omega * eta * eta / root) + incident;

    Ok(ChannelFields {
        coherent,
        incoherent,
        backward,
    })
}

/// Closed-form channel powers; each equals `|field|²` from [`channel_fields`].
pub fn channel_powers(
    drive: DriveParams,
    coupling: CouplingParams,
    delta: f64,
    atom: AtomParams,
) -> Result<ChannelPowers> {
    drive.require_elastic()?;
    let g2 = atom.gamma() * atom.gamma();
    let (omega, eta) = (coupling.omega(), coupling.eta());
    let eta2 = eta * eta;
    let a2 = drive.power();
    let lorentz = g2 / atom.lorentz_denominator(delta);

    Ok(ChannelPowers {
        backward: (1.0 - omega) * lorentz * omega * eta2 * a2,
        coherent: (1.0 + lorentz * (omega * omega * eta2 * eta2 - omega * eta2)) * a2,
        incoherent: lorentz * omega * omega * eta2 * (1.0 - eta2) * a2,
    })
}

/// Scattered power emitted into the covered (forward) solid angle,
/// `Γ²Ω²η² / (Δ² + Γ²/4) · A²`.
pub fn scattered_power_forward(
    drive: DriveParams,
    coupling: CouplingParams,
    delta: f64,
    atom: AtomParams,
) -> Result<f64> {
    drive.require_elastic()?;
    let g2 = atom.gamma() * atom.gamma();
    let (omega, eta) = (coupling.omega(), coupling.eta());
    Ok(g2 * omega * omega * eta * eta / atom.lorentz_denominator(delta) * drive.power())
}
