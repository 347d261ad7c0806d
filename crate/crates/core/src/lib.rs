//! Elastic scattering of light by a single two-level atom in free space.
//!
//! The atom is a linear scatterer: a monochromatic drive at detuning Δ is
//! split into coherent, incoherent and backward output channels
//! ([`elastic`]), and a pulse is handled one spectral component at a time
//! ([`pulse`]). [`geometry`] provides the dipole-weighted solid-angle
//! fraction Ω, and [`numerics`] the quadrature and Fourier machinery used to
//! check the closed forms.

pub mod elastic;
pub mod error;
pub mod geometry;
pub mod numerics;
pub mod pulse;

pub use elastic::{
    channel_fields, channel_powers, scattered_phase, scattered_power, scattered_power_forward, AtomParams,
    ChannelFields, ChannelPowers, CouplingParams, DriveParams,
};
pub use error::{Error, Result};
pub use geometry::{dipole_intensity, weighted_solid_angle, AngularAperture, DipolePattern};
pub use numerics::{inverse_transform, spectral_energy, time_energy, QuadratureResult, QuadratureSpec, TransformPlan};
pub use pulse::{
    absorbed_fraction, analytic_channel_energies, analytic_time_domain, decaying_exp_spectrum, decompose_coherent,
    parseval_absorbed_fraction, rising_exp_spectrum, scatter_pulse, Channel, ChannelSpectra, DetuningGrid,
    ExpDecomposition, PulseParams, TimeSignal,
};
