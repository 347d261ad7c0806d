//! Numerical oracles on the detuning axis: Gauss-Legendre quadrature, a
//! centered discrete inverse Fourier transform, and Parseval energy sums.
//!
//! Fourier convention used throughout the crate:
//!
//! ```text
//! S(Δ) = ∫ A(t) e^{+iΔt} dt,        A(t) = (1/2π) ∫ S(Δ) e^{-iΔt} dΔ
//! ```

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{invalid, Error, Result};
use crate::pulse::{DetuningGrid, TimeSignal};

/// Node count and error target for Gauss-Legendre product rules.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub order: usize,
    /// Acceptable disagreement between the rule at `order` and at `2 * order`.
    pub tolerance: f64,
}

impl QuadratureSpec {
    pub const MIN_ORDER: usize = 8;

    pub fn new(order: usize, tolerance: f64) -> Result<Self> {
        if order < Self::MIN_ORDER {
            return Err(invalid("order", format!("must be >= {}, got {order}", Self::MIN_ORDER)));
        }
        if tolerance.is_nan() || tolerance <= 0.0 || tolerance.is_infinite() {
            return Err(invalid(
                "tolerance",
                format!("must be positive and finite, got {tolerance}"),
            ));
        }
        Ok(Self { order, tolerance })
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            order: 64,
            tolerance: 1e-12,
        }
    }
}

/// Gauss-Legendre nodes and weights on [-1, 1], nodes in ascending order.
pub fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; order];
    let mut weights = vec![0.0; order];
    let n = order as f64;
    for i in 0..order.div_ceil(2) {
        // Tricomi initial guess, refined by Newton on P_n.
        let mut x = (PI * (i as f64 + 0.75) / (n + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(order, x);
            dp = d;
            let step = p / d;
            x -= step;
            if step.abs() <= 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(order, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[order - 1 - i] = x;
        weights[i] = w;
        weights[order - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(order: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=order {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let n = order as f64;
    let dp = n * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Tensor-product Gauss-Legendre rule over `[x0, x1] × [y0, y1]`.
pub fn integrate_2d<F>(f: F, x: (f64, f64), y: (f64, f64), order: usize) -> f64
where
    F: Fn(f64, f64) -> f64,
{
    let (nodes, weights) = gauss_legendre(order);
    let (hx, cx) = ((x.1 - x.0) / 2.0, (x.1 + x.0) / 2.0);
    let (hy, cy) = ((y.1 - y.0) / 2.0, (y.1 + y.0) / 2.0);
    let mut sum = 0.0;
    for (xi, wi) in nodes.iter().zip(&weights) {
        let u = cx + hx * xi;
        let inner: f64 = nodes.iter().zip(&weights).map(|(yj, wj)| wj * f(u, cy + hy * yj)).sum();
        sum += wi * inner;
    }
    sum * hx * hy
}

/// Result of a quadrature together with its order-doubling error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
}

/// Integrates at `spec.order` and `2 * spec.order`; the finer value is
/// returned and their difference is the error estimate.
pub fn integrate_2d_checked<F>(f: F, x: (f64, f64), y: (f64, f64), spec: QuadratureSpec) -> Result<QuadratureResult>
where
    F: Fn(f64, f64) -> f64,
{
    let coarse = integrate_2d(&f, x, y, spec.order);
    let fine = integrate_2d(&f, x, y, 2 * spec.order);
    let error_estimate = (fine - coarse).abs();
    if error_estimate.is_nan() || error_estimate > spec.tolerance {
        return Err(Error::QuadratureNonConvergence {
            value: fine,
            estimate: error_estimate,
            tolerance: spec.tolerance,
        });
    }
    Ok(QuadratureResult {
        value: fine,
        error_estimate,
    })
}

/// Time axis paired with a detuning grid: `dt = π / delta_max`,
/// `t_j = (j - n/2) dt`, so that `dΔ · dt = 2π / n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformPlan {
    pub grid: DetuningGrid,
    /// Add the analytic contribution of the spectral tails beyond the grid.
    pub tail_correction: bool,
}

impl TransformPlan {
    /// Bare discrete sum. Satisfies the discrete Parseval identity exactly.
    pub fn new(grid: DetuningGrid) -> Self {
        Self {
            grid,
            tail_correction: false,
        }
    }

    /// Discrete sum plus the asymptotic tail beyond `±delta_max`; use this to
    /// compare against continuous envelopes.
    pub fn with_tail_correction(grid: DetuningGrid) -> Self {
        Self {
            grid,
            tail_correction: true,
        }
    }

    pub fn dt(&self) -> f64 {
        PI / self.grid.delta_max()
    }

    pub fn time(&self, j: usize) -> f64 {
        (j as f64 - (self.grid.len() / 2) as f64) * self.dt()
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.grid.len()).map(|j| self.time(j)).collect()
    }
}

/// Inverse transform of a spectrum sampled on `plan.grid`:
/// `a_j = (1/2π) Σ_k S(δ_k) e^{-iδ_k t_j} dΔ`.
///
/// With `plan.tail_correction` set, the part of the integral outside
/// `[-delta_max, delta_max]` is added using the asymptotic form
/// `S(Δ) ≈ c₁/(iΔ) + c₂/Δ²` fitted to the two outermost samples. This removes
/// the O(1/(j·π)) truncation ripple a 1/Δ spectral tail leaves next to a
/// discontinuity. At a jump, the result converges to the midpoint value, as
/// any Fourier inversion does.
pub fn inverse_transform(spectrum: &[Complex64], plan: &TransformPlan) -> Result<TimeSignal> {
    let grid = plan.grid;
    let n = grid.len();
    if spectrum.len() != n {
        return Err(Error::GridMismatch {
            expected: n,
            got: spectrum.len(),
        });
    }

    // δ_k t_j = -L t_j + 2π k j / n - π k; both ramps are exact signs.
    let mut buffer: Vec<Complex64> = spectrum
        .iter()
        .enumerate()
        .map(|(k, s)| if k % 2 == 0 { *s } else { -*s })
        .collect();
    let mut planner = FftPlanner::<f64>::new();
    planner.plan_fft_forward(n).process(&mut buffer);

    let scale = grid.spacing() / (2.0 * PI);
    let half = n / 2;
    let times = plan.times();
    let mut values: Vec<Complex64> = buffer
        .into_iter()
        .enumerate()
        .map(|(j, v)| {
            let ramp = if (j + half).is_multiple_of(2) { 1.0 } else { -1.0 };
            v * (scale * ramp)
        })
        .collect();

    if plan.tail_correction {
        let tail = TailModel::fit(spectrum, &grid);
        for (v, &t) in values.iter_mut().zip(&times) {
            *v += tail.contribution(t);
        }
    }

    Ok(TimeSignal::new(times, values))
}

/// Asymptotic model of the spectrum beyond the sampled window.
#[derive(Debug, Clone, Copy)]
struct TailModel {
    odd: Complex64,
    even: Complex64,
    cutoff: f64,
    spacing: f64,
    first: Complex64,
}

impl TailModel {
    fn fit(spectrum: &[Complex64], grid: &DetuningGrid) -> Self {
        let i = Complex64::i();
        let d1 = grid.sample(0);
        let d2 = grid.sample(grid.len() - 1);
        let (s1, s2) = (spectrum[0], spectrum[grid.len() - 1]);
        // [1/(i d1)  1/d1²] [odd ]   [s1]
        // [1/(i d2)  1/d2²] [even] = [s2]
        let m11 = 1.0 / (i * d1);
        let m12 = Complex64::new(1.0 / (d1 * d1), 0.0);
        let m21 = 1.0 / (i * d2);
        let m22 = Complex64::new(1.0 / (d2 * d2), 0.0);
        let det = m11 * m22 - m12 * m21;
        let odd = (s1 * m22 - m12 * s2) / det;
        let even = (m11 * s2 - m21 * s1) / det;
        Self {
            odd,
            even,
            cutoff: grid.delta_max(),
            spacing: grid.spacing(),
            first: s1,
        }
    }

    fn model(&self, delta: f64) -> Complex64 {
        self.odd / Complex64::new(0.0, delta) + self.even / (delta * delta)
    }

    fn model_slope(&self, delta: f64) -> Complex64 {
        -self.odd / Complex64::new(0.0, delta * delta) - 2.0 * self.even / (delta * delta * delta)
    }

    /// (1/2π) ∫_{|Δ|>L} [odd/(iΔ) + even/Δ²] e^{-iΔt} dΔ, plus the
    /// endpoint terms that turn the one-sided rectangle sum over `[-L, L)`
    /// into the integral over `[-L, L]`.
    fn contribution(&self, t: f64) -> Complex64 {
        let l = self.cutoff;
        let h = self.spacing;
        let at_upper = self.model(l);
        let (up_phase, low_phase) = (Complex64::from_polar(1.0, -l * t), Complex64::from_polar(1.0, l * t));
        let it = Complex64::new(0.0, t);
        // Euler-Maclaurin: ∫ = trapezoid - h²/12 (f'(L) - f'(-L)), f = S e^{-iΔt}.
        let slope_upper = (self.model_slope(l) - it * at_upper) * up_phase;
        let slope_lower = (self.model_slope(-l) - it * self.first) * low_phase;
        let endpoint =
            0.5 * h * (at_upper * up_phase - self.first * low_phase) - h * h / 12.0 * (slope_upper - slope_lower);
        let x = l * t.abs();
        let si_tail = FRAC_PI_2 - sine_integral(x);
        let odd_part = -2.0 * t.signum() * si_tail;
        let odd_part = if t == 0.0 { 0.0 } else { odd_part };
        let even_part = 2.0 * ((l * t).cos() / l - t.abs() * si_tail);
        (self.odd * odd_part + self.even * even_part + endpoint) / (2.0 * PI)
    }
}

/// `(1/2π) Σ w_k |S(δ_k)|² dΔ` with trapezoidal weights (half weight on the
/// two end samples). Truncating a Lorentzian-class tail at `delta_max`
/// costs O(1/delta_max) relative energy.
pub fn spectral_energy(spectrum: &[Complex64], grid: &DetuningGrid) -> Result<f64> {
    let n = grid.len();
    if spectrum.len() != n {
        return Err(Error::GridMismatch {
            expected: n,
            got: spectrum.len(),
        });
    }
    let interior: f64 = spectrum[1..n - 1].iter().map(|s| s.norm_sqr()).sum();
    let ends = 0.5 * (spectrum[0].norm_sqr() + spectrum[n - 1].norm_sqr());
    Ok((interior + ends) * grid.spacing() / (2.0 * PI))
}

/// `Σ |a_j|² dt` over a uniformly sampled signal.
pub fn time_energy(signal: &TimeSignal) -> f64 {
    signal.values().iter().map(|a| a.norm_sqr()).sum::<f64>() * signal.dt()
}

/// Sine integral `Si(x) = ∫₀ˣ sin(u)/u du`.
///
/// Power series below |x| = 2, continued fraction for `E₁(ix)` above.
pub fn sine_integral(x: f64) -> f64 {
    if x < 0.0 {
        return -sine_integral(-x);
    }
    if x == 0.0 {
        return 0.0;
    }
    if x.is_infinite() {
        return FRAC_PI_2;
    }
    if x <= 2.0 {
        let mut sum = 0.0;
        let mut term = x;
        let mut k = 0usize;
        loop {
            let contrib = term / (2 * k + 1) as f64;
            sum += contrib;
            if contrib.abs() < 1e-17 * sum.abs() {
                break;
            }
            k += 1;
            term *= -x * x / ((2 * k) as f64 * (2 * k + 1) as f64);
        }
        return sum;
    }

    // Modified Lentz evaluation of E₁(ix) e^{ix}.
    let tiny = 1e-300;
    let mut b = Complex64::new(1.0, x);
    let mut c = Complex64::new(1.0 / tiny, 0.0);
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 2..10_000usize {
        let a = -(((i - 1) * (i - 1)) as f64);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).norm() < 1e-16 {
            break;
        }
    }
    h *= Complex64::new(x.cos(), -x.sin());
    FRAC_PI_2 + h.im
}
