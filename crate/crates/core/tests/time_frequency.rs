use std::f64::consts::{FRAC_PI_2, PI};

use atomscatter::numerics::gauss_legendre;
use atomscatter::pulse::{analytic_channel_energies, parseval_energy_budget, time_domain_limits};
use atomscatter::{
    absorbed_fraction, analytic_time_domain, decaying_exp_spectrum, inverse_transform, rising_exp_spectrum,
    scatter_pulse, spectral_energy, time_energy, AtomParams, Channel, CouplingParams, DetuningGrid, PulseParams,
    TransformPlan,
};
use num_complex::Complex64;

fn unit_pulse() -> PulseParams {
    PulseParams::new(1.0, AtomParams::normalized()).unwrap()
}

fn default_grid() -> DetuningGrid {
    DetuningGrid::default_for(AtomParams::normalized())
}

/// ∫_{-∞}^{∞} f(Δ) dΔ for Lorentzian-class f, via Δ = (Γ/2) tan u and
/// Gauss-Legendre in u on (-π/2, π/2).
fn lorentzian_quadrature(f: impl Fn(f64) -> f64, gamma: f64) -> f64 {
    let (nodes, weights) = gauss_legendre(200);
    nodes
        .iter()
        .zip(&weights)
        .map(|(x, w)| {
            let u = FRAC_PI_2 * x;
            let jac = 0.5 * gamma / u.cos().powi(2);
            w * f(0.5 * gamma * u.tan()) * jac
        })
        .sum::<f64>()
        * FRAC_PI_2
}

#[test]
fn lorentzian_integral_oracles() {
    for gamma in [0.3, 1.0, 7.0] {
        let d = |x: f64| x * x + gamma * gamma / 4.0;
        let i1 = lorentzian_quadrature(|x| 1.0 / d(x), gamma);
        let i2 = lorentzian_quadrature(|x| 1.0 / d(x).powi(2), gamma);
        assert!((i1 - 2.0 * PI / gamma).abs() < 1e-12 * i1);
        assert!((i2 - 4.0 * PI / gamma.powi(3)).abs() < 1e-12 * i2);
    }
}

#[test]
fn incident_spectrum_energy_matches_time_integral() {
    // (1/2π)∫|S|²dΔ against ∫_{-∞}^0 A0² e^{Γt} dt = A0²/Γ.
    let atom = AtomParams::new(2.5).unwrap();
    let pulse = PulseParams::new(1.3, atom).unwrap();
    let quad = lorentzian_quadrature(|d| rising_exp_spectrum(pulse, d).norm_sqr(), atom.gamma()) / (2.0 * PI);
    assert!((quad - 1.3 * 1.3 / 2.5).abs() < 1e-12);
}

#[test]
fn closed_form_channel_energies_match_quadrature() {
    let atom = AtomParams::new(0.8).unwrap();
    let pulse = PulseParams::new(1.1, atom).unwrap();
    for (o, e) in [(0.11, 1.0), (0.5, 0.5), (1.0, 1.0), (0.27, 0.66)] {
        let c = CouplingParams::new(o, e).unwrap();
        let closed = analytic_channel_energies(pulse, c);
        let q = |ch: usize| {
            lorentzian_quadrature(
                |d| {
                    let (coh, inc, back) = atomscatter::pulse::scattered_spectrum_at(pulse, c, d, 0.0);
                    [coh, inc, back][ch].norm_sqr()
                },
                atom.gamma(),
            ) / (2.0 * PI)
        };
        assert!((closed.coherent - q(0)).abs() < 1e-12);
        assert!((closed.incoherent - q(1)).abs() < 1e-12);
        assert!((closed.backward - q(2)).abs() < 1e-12);
        assert!((closed.total() - pulse.energy()).abs() < 1e-10 * pulse.energy());
    }
}

#[test]
fn spectral_energy_examples() {
    let pulse = unit_pulse();
    let grid = default_grid();
    let rising: Vec<Complex64> = grid.samples().map(|d| rising_exp_spectrum(pulse, d)).collect();
    let e = spectral_energy(&rising, &grid).unwrap();
    assert!((e - 1.0).abs() < 2e-3, "{e}");

    let c = CouplingParams::new(0.11, 1.0).unwrap();
    let spectra = scatter_pulse(pulse, c, grid, 0.0);
    let back = spectral_energy(&spectra.backward, &grid).unwrap();
    let oracle = (1.0 - 0.11) * 0.11 * 2.0;
    assert!((back - oracle).abs() < 1e-6 * oracle, "{back} vs {oracle}");
}

/// Envelope value an inverse Fourier transform converges to: the midpoint
/// of the one-sided limits at a jump, the function value elsewhere.
fn inversion_value(ch: Channel, pulse: PulseParams, c: CouplingParams, t: f64) -> Complex64 {
    let (l, r) = time_domain_limits(ch, pulse, c, t);
    (l + r) * 0.5
}

#[test]
fn rising_spectrum_transforms_to_rising_exponential() {
    let pulse = PulseParams::new(0.9, AtomParams::normalized()).unwrap();
    let grid = default_grid();
    let plan = TransformPlan::with_tail_correction(grid);
    let rising: Vec<Complex64> = grid.samples().map(|d| rising_exp_spectrum(pulse, d)).collect();
    let decaying: Vec<Complex64> = grid.samples().map(|d| decaying_exp_spectrum(pulse, d)).collect();
    let up = inverse_transform(&rising, &plan).unwrap();
    let down = inverse_transform(&decaying, &plan).unwrap();
    let n = grid.len();
    for (j, &t) in up.times().iter().enumerate() {
        if t.abs() > 10.0 {
            continue;
        }
        let want = if t < 0.0 {
            0.9 * (t / 2.0).exp()
        } else if t == 0.0 {
            0.45
        } else {
            0.0
        };
        assert!((up.values()[j] - want).norm() < 1e-3 * 0.9, "t = {t}");
        // Mirror in t: sample j ↔ n - j.
        if j > 0 {
            assert!((down.values()[n - j] - up.values()[j]).norm() < 1e-5);
        }
    }
}

#[test]
fn uncorrected_sum_rings_at_the_jump() {
    // Documents why the tail model exists: the bare sum misses by ~0.09 A0
    // at the first sample after the discontinuity.
    let pulse = unit_pulse();
    let grid = default_grid();
    let rising: Vec<Complex64> = grid.samples().map(|d| rising_exp_spectrum(pulse, d)).collect();
    let raw = inverse_transform(&rising, &TransformPlan::new(grid)).unwrap();
    let first_after = raw.values()[grid.len() / 2 + 1];
    assert!(first_after.norm() > 0.05);
}

#[test]
fn channel_envelopes_round_trip() {
    let grid = default_grid();
    let plan = TransformPlan::with_tail_correction(grid);
    let pulse = PulseParams::new(1.2, AtomParams::normalized()).unwrap();
    for (o, e) in [(0.11, 1.0), (0.5, 0.5), (1.0, 1.0), (0.7, 0.3)] {
        let c = CouplingParams::new(o, e).unwrap();
        let spectra = scatter_pulse(pulse, c, grid, 0.0);
        for ch in Channel::ALL {
            let signal = inverse_transform(spectra.channel(ch), &plan).unwrap();
            let worst = signal
                .times()
                .iter()
                .zip(signal.values())
                .filter(|(t, _)| t.abs() <= 10.0)
                .map(|(&t, v)| (v - inversion_value(ch, pulse, c, t)).norm())
                .fold(0.0, f64::max);
            assert!(worst <= 1e-3 * 1.2, "{ch} Ω={o} η={e}: {worst}");
        }
    }
}

#[test]
fn double_sided_exponential_time_energy() {
    // i·c·e^{-Γ|t|/2} carries 2c²/Γ.
    let c = 0.37;
    let grid = default_grid();
    let plan = TransformPlan::new(grid);
    let values: Vec<Complex64> = plan
        .times()
        .iter()
        .map(|t| Complex64::new(0.0, c * (-t.abs() / 2.0).exp()))
        .collect();
    let signal = atomscatter::pulse::TimeSignal::from_samples(plan.times(), values);
    let e = time_energy(&signal);
    assert!((e - 2.0 * c * c).abs() < 1e-3 * 2.0 * c * c, "{e}");
}

#[test]
fn sampled_rising_exponential_energy() {
    // Rectangle sum over a jump: dt Σ_{j>=1} e^{-j dt} = dt / (e^{dt} - 1),
    // which is 1 - dt/2 + O(dt²).
    let plan = TransformPlan::new(default_grid());
    let dt = plan.dt();
    let rising: Vec<Complex64> = plan
        .times()
        .iter()
        .map(|&t| Complex64::new(if t < 0.0 { (t / 2.0).exp() } else { 0.0 }, 0.0))
        .collect();
    let e = time_energy(&atomscatter::pulse::TimeSignal::from_samples(plan.times(), rising));
    let geometric = dt / dt.exp_m1();
    assert!((e - geometric).abs() < 1e-10, "{e} vs {geometric}");
    assert!((e - 1.0).abs() < dt);
}

#[test]
fn parseval_gaussian() {
    let grid = DetuningGrid::new(4096, 40.0).unwrap();
    let plan = TransformPlan::new(grid);
    let spectrum: Vec<Complex64> = grid
        .samples()
        .map(|d| Complex64::from_polar((-(d - 1.0) * (d - 1.0) / 8.0).exp(), 0.4 * d))
        .collect();
    let signal = inverse_transform(&spectrum, &plan).unwrap();
    let (te, se) = (time_energy(&signal), spectral_energy(&spectrum, &grid).unwrap());
    assert!((te - se).abs() < 1e-6 * se);
}

#[test]
fn parseval_lorentzian_channels() {
    let grid = default_grid();
    let plan = TransformPlan::new(grid);
    let pulse = unit_pulse();
    let spectra = scatter_pulse(pulse, CouplingParams::new(0.5, 0.5).unwrap(), grid, 0.0);
    for ch in Channel::ALL {
        let s = spectra.channel(ch);
        let te = time_energy(&inverse_transform(s, &plan).unwrap());
        let se = spectral_energy(s, &grid).unwrap();
        assert!((te - se).abs() < 2e-3 * se, "{ch}: {te} vs {se}");
    }
}

#[test]
fn transform_is_linear() {
    let grid = DetuningGrid::new(2048, 60.0).unwrap();
    let plan = TransformPlan::new(grid);
    let pulse = unit_pulse();
    let s1: Vec<Complex64> = grid.samples().map(|d| rising_exp_spectrum(pulse, d)).collect();
    let s2: Vec<Complex64> = grid
        .samples()
        .map(|d| Complex64::new((-d * d).exp(), 0.0) + decaying_exp_spectrum(pulse, d) * 0.3)
        .collect();
    let (a, b) = (Complex64::new(0.7, -1.1), Complex64::new(-2.0, 0.25));
    let mix: Vec<Complex64> = s1.iter().zip(&s2).map(|(x, y)| a * x + b * y).collect();
    let t1 = inverse_transform(&s1, &plan).unwrap();
    let t2 = inverse_transform(&s2, &plan).unwrap();
    let tm = inverse_transform(&mix, &plan).unwrap();
    let scale = tm.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
    for j in 0..grid.len() {
        let want = a * t1.values()[j] + b * t2.values()[j];
        assert!((tm.values()[j] - want).norm() <= 1e-12 * scale);
    }
}

fn max_envelope_deviation(grid: DetuningGrid, tail_correction: bool) -> f64 {
    let pulse = unit_pulse();
    let c = CouplingParams::new(0.5, 0.8).unwrap();
    let spectra = scatter_pulse(pulse, c, grid, 0.0);
    let plan = TransformPlan { grid, tail_correction };
    let mut worst: f64 = 0.0;
    for ch in Channel::ALL {
        let signal = inverse_transform(spectra.channel(ch), &plan).unwrap();
        for (&t, v) in signal.times().iter().zip(signal.values()) {
            // Fixed physical window common to both grids.
            if (0.5..=10.0).contains(&t.abs()) {
                worst = worst.max((v - analytic_time_domain(ch, pulse, c, t)).norm());
            }
        }
    }
    worst
}

#[test]
fn grid_refinement_halves_deviation() {
    let coarse = max_envelope_deviation(DetuningGrid::new(1 << 14, 100.0).unwrap(), true);
    let fine = max_envelope_deviation(DetuningGrid::new(1 << 15, 200.0).unwrap(), true);
    assert!(fine <= 0.5 * coarse, "{coarse} -> {fine}");
    // The bare sum converges at first order, so its ratio sits right at 1/2.
    let coarse = max_envelope_deviation(DetuningGrid::new(1 << 14, 100.0).unwrap(), false);
    let fine = max_envelope_deviation(DetuningGrid::new(1 << 15, 200.0).unwrap(), false);
    assert!(fine <= 0.51 * coarse, "{coarse} -> {fine}");
}

#[test]
fn parseval_absorbed_fraction_matches_closed_form() {
    let grid = default_grid();
    let pulse = unit_pulse();
    for o in [0.11, 0.5, 1.0] {
        for e in [0.11, 0.5, 1.0] {
            let c = CouplingParams::new(o, e).unwrap();
            let budget = parseval_energy_budget(pulse, c, grid).unwrap();
            assert!((budget.decaying_fraction() - absorbed_fraction(c)).abs() <= 1e-3);
        }
    }
}
