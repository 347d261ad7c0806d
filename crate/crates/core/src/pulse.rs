//! Response to a rising exponential pulse `A0 e^{Γt/2} H(-t)` whose time
//! constant matches the atomic lifetime.
//!
//! Every spectral component is scattered elastically, so the output spectrum
//! of each channel is the monochromatic transfer function applied to the
//! incident spectrum `A0 / (Γ/2 + iΔ)`. The coherent channel splits into a
//! rising part `(1 - Ωη²)` and a decaying part `-Ωη²`; the backward and
//! incoherent channels are double-sided exponentials.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::elastic::{AtomParams, CouplingParams};
use crate::error::{invalid, Error, Result};
use crate::numerics::spectral_energy;

/// Uniform symmetric sampling of the detuning axis:
/// `δ_k = -delta_max + k · 2·delta_max/n`, `k = 0..n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetuningGrid {
    n: usize,
    delta_max: f64,
}

impl DetuningGrid {
    pub const DEFAULT_LEN: usize = 1 << 16;
    /// Default half-span in units of Γ.
    pub const DEFAULT_SPAN: f64 = 200.0;

    pub fn new(n: usize, delta_max: f64) -> Result<Self> {
        if n < 2 || !n.is_multiple_of(2) {
            return Err(invalid("grid_n", format!("must be even and >= 2, got {n}")));
        }
        if delta_max.is_nan() || delta_max <= 0.0 || delta_max.is_infinite() {
            return Err(invalid(
                "grid_span",
                format!("must be positive and finite, got {delta_max}"),
            ));
        }
        Ok(Self { n, delta_max })
    }

    /// `2^16` samples spanning ±200 Γ.
    pub fn default_for(atom: AtomParams) -> Self {
        Self {
            n: Self::DEFAULT_LEN,
            delta_max: Self::DEFAULT_SPAN * atom.gamma(),
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn delta_max(&self) -> f64 {
        self.delta_max
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.delta_max / self.n as f64
    }

    pub fn sample(&self, k: usize) -> f64 {
        -self.delta_max + k as f64 * self.spacing()
    }

    pub fn samples(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.n).map(move |k| self.sample(k))
    }
}

/// Uniformly sampled complex envelope in the carrier rotating frame.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSignal {
    times: Vec<f64>,
    values: Vec<Complex64>,
}

impl TimeSignal {
    pub(crate) fn new(times: Vec<f64>, values: Vec<Complex64>) -> Self {
        debug_assert_eq!(times.len(), values.len());
        Self { times, values }
    }

    /// Pairs sample times with values. Panics if the lengths differ.
    pub fn from_samples(times: Vec<f64>, values: Vec<Complex64>) -> Self {
        assert_eq!(times.len(), values.len(), "time and value counts differ");
        Self { times, values }
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn dt(&self) -> f64 {
        match self.times.as_slice() {
            [first, second, ..] => second - first,
            _ => 0.0,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Peak amplitude of the incident pulse and the atom it is matched to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseParams {
    a0: f64,
    atom: AtomParams,
}

impl PulseParams {
    pub fn new(a0: f64, atom: AtomParams) -> Result<Self> {
        if a0.is_nan() || a0 < 0.0 || a0.is_infinite() {
            return Err(invalid("a0", format!("must be non-negative and finite, got {a0}")));
        }
        Ok(Self { a0, atom })
    }

    pub fn a0(&self) -> f64 {
        self.a0
    }

    pub fn atom(&self) -> AtomParams {
        self.atom
    }

    pub fn gamma(&self) -> f64 {
        self.atom.gamma()
    }

    /// Energy of the incident pulse, `A0²/Γ`.
    pub fn energy(&self) -> f64 {
        self.a0 * self.a0 / self.gamma()
    }
}

/// Output channel selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Channel {
    Coherent,
    Incoherent,
    Backward,
}

impl Channel {
    pub const ALL: [Channel; 3] = [Channel::Coherent, Channel::Incoherent, Channel::Backward];

    pub fn name(self) -> &'static str {
        match self {
            Channel::Coherent => "coh",
            Channel::Incoherent => "incoh",
            Channel::Backward => "back",
        }
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Channel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "coh" | "coherent" => Ok(Channel::Coherent),
            "incoh" | "incoherent" => Ok(Channel::Incoherent),
            "back" | "backward" => Ok(Channel::Backward),
            other => Err(invalid("channel", format!("unknown channel `{other}`"))),
        }
    }
}

/// Complex spectral amplitudes of the three channels on a detuning grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSpectra {
    pub grid: DetuningGrid,
    pub coherent: Vec<Complex64>,
    pub incoherent: Vec<Complex64>,
    pub backward: Vec<Complex64>,
}

impl ChannelSpectra {
    pub fn channel(&self, channel: Channel) -> &[Complex64] {
        match channel {
            Channel::Coherent => &self.coherent,
            Channel::Incoherent => &self.incoherent,
            Channel::Backward => &self.backward,
        }
    }
}

/// Coherent output written as a weighted sum of the rising spectrum
/// `1/(Γ/2 + iΔ)` and the decaying spectrum `1/(Γ/2 - iΔ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpDecomposition {
    pub rising_coeff: Complex64,
    pub decaying_coeff: Complex64,
}

impl ExpDecomposition {
    pub fn reconstruct(&self, delta: f64, atom: AtomParams) -> Complex64 {
        let half = 0.5 * atom.gamma();
        self.rising_coeff / Complex64::new(half, delta) + self.decaying_coeff / Complex64::new(half, -delta)
    }
}

/// Spectrum of `A0 e^{Γt/2} H(-t)`: `A0 / (Γ/2 + iΔ)`.
pub fn rising_exp_spectrum(pulse: PulseParams, delta: f64) -> Complex64 {
    pulse.a0() / Complex64::new(0.5 * pulse.gamma(), delta)
}

/// Spectrum of `A0 e^{-Γt/2} H(t)`: `A0 / (Γ/2 - iΔ)`.
pub fn decaying_exp_spectrum(pulse: PulseParams, delta: f64) -> Complex64 {
    pulse.a0() / Complex64::new(0.5 * pulse.gamma(), -delta)
}

/// Output amplitudes `(coherent, incoherent, backward)` at one detuning.
pub fn scattered_spectrum_at(
    pulse: PulseParams,
    coupling: CouplingParams,
    delta: f64,
    phi0: f64,
) -> (Complex64, Complex64, Complex64) {
    let gamma = pulse.gamma();
    let (omega, eta) = (coupling.omega(), coupling.eta());
    let scale = Complex64::from_polar(pulse.a0() / pulse.atom().lorentz_denominator(delta), phi0);
    let i = Complex64::i();

    let backward = scale * i * (eta * gamma * (omega * (1.0 - omega)).sqrt());
    let incoherent = scale * i * (gamma * omega * eta * (1.0 - eta * eta).sqrt());
    let coherent = scale * Complex64::new(gamma * (0.5 - coupling.coupling_strength()), -delta);
    (coherent, incoherent, backward)
}

pub fn scatter_pulse(pulse: PulseParams, coupling: CouplingParams, grid: DetuningGrid, phi0: f64) -> ChannelSpectra {
    let mut coherent = Vec::with_capacity(grid.len());
    let mut incoherent = Vec::with_capacity(grid.len());
    let mut backward = Vec::with_capacity(grid.len());
    for delta in grid.samples() {
        let (c, inc, b) = scattered_spectrum_at(pulse, coupling, delta, phi0);
        coherent.push(c);
        incoherent.push(inc);
        backward.push(b);
    }
    ChannelSpectra {
        grid,
        coherent,
        incoherent,
        backward,
    }
}

/// Rising weight `(1 - Ωη²) A0` and decaying weight `-Ωη² A0` of the
/// coherent channel (at φ0 = 0). The minus sign is the π phase of the
/// re-emitted field.
pub fn decompose_coherent(pulse: PulseParams, coupling: CouplingParams) -> ExpDecomposition {
    let k = coupling.coupling_strength();
    ExpDecomposition {
        rising_coeff: Complex64::new((1.0 - k) * pulse.a0(), 0.0),
        decaying_coeff: Complex64::new(-k * pulse.a0(), 0.0),
    }
}

/// Fraction of the output energy carried by the decaying components, Ωη².
pub fn absorbed_fraction(coupling: CouplingParams) -> f64 {
    coupling.coupling_strength()
}

/// Energy split of the scattered pulse, in the same units as `A0²/Γ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyBudget {
    /// Energy of the decaying (t > 0) parts of all channels.
    pub decaying: f64,
    /// Energy of all three channels.
    pub total: f64,
}

impl EnergyBudget {
    pub fn decaying_fraction(&self) -> f64 {
        if self.total == 0.0 {
            0.0
        } else {
            self.decaying / self.total
        }
    }
}

/// Decaying-energy budget summed numerically on `grid`: the decaying
/// coherent term `|decaying_coeff|²/(Δ² + Γ²/4)` plus half of the backward and
/// incoherent energies (their envelopes are symmetric in t). Total energy is
/// the sum over all channel spectra on the same grid.
pub fn parseval_energy_budget(
    pulse: PulseParams,
    coupling: CouplingParams,
    grid: DetuningGrid,
) -> Result<EnergyBudget> {
    let spectra = scatter_pulse(pulse, coupling, grid, 0.0);
    let decomposition = decompose_coherent(pulse, coupling);
    let decaying_coh: Vec<Complex64> = grid
        .samples()
        .map(|d| decomposition.decaying_coeff / Complex64::new(0.5 * pulse.gamma(), -d))
        .collect();

    let e_coh = spectral_energy(&spectra.coherent, &grid)?;
    let e_incoh = spectral_energy(&spectra.incoherent, &grid)?;
    let e_back = spectral_energy(&spectra.backward, &grid)?;
    let e_decay_coh = spectral_energy(&decaying_coh, &grid)?;

    Ok(EnergyBudget {
        decaying: e_decay_coh + 0.5 * (e_incoh + e_back),
        total: e_coh + e_incoh + e_back,
    })
}

/// Absorbed fraction from the Parseval energy budget on `grid`.
pub fn parseval_absorbed_fraction(pulse: PulseParams, coupling: CouplingParams, grid: DetuningGrid) -> Result<f64> {
    Ok(parseval_energy_budget(pulse, coupling, grid)?.decaying_fraction())
}

/// Closed-form channel energies, from `∫dΔ/(Δ²+Γ²/4) = 2π/Γ` and
/// `∫dΔ/(Δ²+Γ²/4)² = 4π/Γ³`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelEnergies {
    pub coherent: f64,
    pub incoherent: f64,
    pub backward: f64,
}

impl ChannelEnergies {
    pub fn total(&self) -> f64 {
        self.coherent + self.incoherent + self.backward
    }
}

pub fn analytic_channel_energies(pulse: PulseParams, coupling: CouplingParams) -> ChannelEnergies {
    let (omega, eta) = (coupling.omega(), coupling.eta());
    let eta2 = eta * eta;
    let k = coupling.coupling_strength();
    let unit = pulse.energy();
    // |S_coh|² = A0² [1/D + Γ²(Ω²η⁴ - Ωη²)/D²]
    ChannelEnergies {
        coherent: unit * (1.0 + 2.0 * (k * k - k)),
        incoherent: unit * 2.0 * omega * omega * eta2 * (1.0 - eta2),
        backward: unit * 2.0 * eta2 * omega * (1.0 - omega),
    }
}

/// Left and right limits of a channel envelope at time `t`.
pub fn time_domain_limits(
    channel: Channel,
    pulse: PulseParams,
    coupling: CouplingParams,
    t: f64,
) -> (Complex64, Complex64) {
    if t != 0.0 {
        let v = analytic_time_domain(channel, pulse, coupling, t);
        return (v, v);
    }
    match channel {
        Channel::Coherent => {
            let d = decompose_coherent(pulse, coupling);
            (d.rising_coeff, d.decaying_coeff)
        }
        _ => {
            let v = analytic_time_domain(channel, pulse, coupling, 0.0);
            (v, v)
        }
    }
}

/// Envelope of a channel in the rotating frame. Right-continuous: at t = 0
/// the coherent channel takes its decaying-branch value.
pub fn analytic_time_domain(channel: Channel, pulse: PulseParams, coupling: CouplingParams, t: f64) -> Complex64 {
    let half_gamma = 0.5 * pulse.gamma();
    let a0 = pulse.a0();
    let (omega, eta) = (coupling.omega(), coupling.eta());
    let i = Complex64::i();
    match channel {
        Channel::Coherent => {
            let d = decompose_coherent(pulse, coupling);
            if t < 0.0 {
                d.rising_coeff * (half_gamma * t).exp()
            } else {
                d.decaying_coeff * (-half_gamma * t).exp()
            }
        }
        Channel::Backward => i * (a0 * eta * (omega * (1.0 - omega)).sqrt() * (-half_gamma * t.abs()).exp()),
        Channel::Incoherent => i * (a0 * omega * eta * (1.0 - eta * eta).sqrt() * (-half_gamma * t.abs()).exp()),
    }
}
