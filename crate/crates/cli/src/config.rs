//! Run configuration: a flat `key = value` file merged with command-line
//! overrides (command line wins), then validated into typed parameters.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use atomscatter::{
    AngularAperture, AtomParams, CouplingParams, DetuningGrid, DipolePattern, DriveParams, PulseParams, QuadratureSpec,
};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Mono,
    Pulse,
    Sweep,
    SolidAngle,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Mono => "mono",
            Mode::Pulse => "pulse",
            Mode::Sweep => "sweep",
            Mode::SolidAngle => "solid-angle",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "mono" => Ok(Mode::Mono),
            "pulse" => Ok(Mode::Pulse),
            "sweep" => Ok(Mode::Sweep),
            "solid-angle" | "solid_angle" => Ok(Mode::SolidAngle),
            other => Err(CliError::config("mode", format!("unknown mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(CliError::config(
                "format",
                format!("expected csv or json, got `{other}`"),
            )),
        }
    }
}

/// Every key accepted in a config file or as `--key value`, with its default.
pub const KEYS: &[(&str, &str)] = &[
    ("gamma", "1"),
    ("omega", "1"),
    ("eta", "1"),
    ("power", "1"),
    ("a0", "1"),
    ("phi0", "0"),
    ("saturation", "0"),
    ("grid-n", "65536"),
    ("grid-span", "200"),
    ("delta-start", "-10"),
    ("delta-stop", "10"),
    ("delta-count", "201"),
    ("time-window", "10"),
    ("spectrum-stride", "1"),
    ("omega-start", ""),
    ("omega-stop", ""),
    ("omega-count", "1"),
    ("eta-start", ""),
    ("eta-stop", ""),
    ("eta-count", "1"),
    ("pattern", "linear"),
    ("theta-min", "0"),
    ("theta-max", "pi"),
    ("phi-min", "0"),
    ("phi-max", "2pi"),
    ("quad-order", "64"),
    ("quad-tol", "1e-12"),
    ("format", "csv"),
    ("out", ""),
];

fn canonical_key(raw: &str) -> String {
    raw.trim().to_ascii_lowercase().replace('_', "-")
}

/// Raw string settings after merging file and command line.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    values: BTreeMap<String, String>,
}

impl Settings {
    /// Parses `key = value` lines. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut settings = Settings::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::config(
                    "config",
                    format!("line {}: expected `key = value`, got `{line}`", lineno + 1),
                ));
            };
            let key = canonical_key(key);
            if key == "mode" {
                settings.values.insert(key, value.trim().to_string());
                continue;
            }
            settings.set(&key, value.trim())?;
        }
        Ok(settings)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config("config", format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let key = canonical_key(key);
        if !KEYS.iter().any(|(k, _)| *k == key) {
            return Err(CliError::config("config", format!("unknown key `{key}`")));
        }
        self.values.insert(key, value.to_string());
        Ok(())
    }

    /// Applies `other` on top of `self`.
    pub fn merge(&mut self, other: &Settings) {
        for (k, v) in &other.values {
            self.values.insert(k.clone(), v.clone());
        }
    }

    fn raw(&self, key: &'static str) -> &str {
        self.values
            .get(key)
            .map(String::as_str)
            .or_else(|| KEYS.iter().find(|(k, _)| *k == key).map(|(_, d)| *d))
            .unwrap_or("")
    }

    fn is_set(&self, key: &'static str) -> bool {
        self.values.contains_key(key)
    }

    fn float(&self, key: &'static str) -> Result<f64, CliError> {
        parse_number(self.raw(key))
            .ok_or_else(|| CliError::config(key, format!("expected a number, got `{}`", self.raw(key))))
    }

    fn count(&self, key: &'static str) -> Result<usize, CliError> {
        let raw = self.raw(key);
        raw.trim()
            .parse::<usize>()
            .map_err(|_| CliError::config(key, format!("expected a non-negative integer, got `{raw}`")))
    }
}

/// Accepts plain floats plus `pi`, `2pi`, `pi/2`-style shorthands for angles.
pub fn parse_number(raw: &str) -> Option<f64> {
    let s = raw.trim().to_ascii_lowercase();
    if let Ok(v) = s.parse::<f64>() {
        return v.is_finite().then_some(v);
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim().parse::<f64>().ok()?),
        None => (s.as_str(), 1.0),
    };
    let factor = match num.strip_suffix("pi") {
        Some("") => 1.0,
        Some("-") => -1.0,
        Some(prefix) => prefix.trim_end_matches('*').parse::<f64>().ok()?,
        None => return None,
    };
    let v = factor * PI / den;
    v.is_finite().then_some(v)
}

/// Inclusive linear range; a single point when `count == 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRange {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl SweepRange {
    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count)
            .map(|k| {
                if k + 1 == self.count {
                    self.stop
                } else {
                    self.start + k as f64 * step
                }
            })
            .collect()
    }
}

/// Validated configuration for one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub atom: AtomParams,
    pub coupling: CouplingParams,
    pub drive: DriveParams,
    pub pulse: PulseParams,
    pub grid: DetuningGrid,
    /// Detuning sweep for `mono`, in units of Γ.
    pub delta: SweepRange,
    /// Half-width of the emitted time table, in units of 1/Γ.
    pub time_window: f64,
    pub spectrum_stride: usize,
    pub omega_range: SweepRange,
    pub eta_range: SweepRange,
    pub pattern: DipolePattern,
    pub aperture: AngularAperture,
    pub quadrature: QuadratureSpec,
    pub format: Format,
    pub out: Option<PathBuf>,
    /// Resolved `key = value` pairs echoed into output headers.
    pub echo: Vec<(String, String)>,
}

fn wrap<T>(key: &'static str, r: atomscatter::Result<T>) -> Result<T, CliError> {
    r.map_err(|e| CliError::config(key, e.to_string()))
}

fn range(
    settings: &Settings,
    prefix: &'static str,
    start: &'static str,
    stop: &'static str,
    count: &'static str,
) -> Result<SweepRange, CliError> {
    let fallback = settings.float(prefix)?;
    let start_v = if settings.raw(start).is_empty() {
        fallback
    } else {
        settings.float(start)?
    };
    let stop_v = if settings.raw(stop).is_empty() {
        start_v
    } else {
        settings.float(stop)?
    };
    let n = settings.count(count)?;
    if n < 1 {
        return Err(CliError::config(count, "must be >= 1"));
    }
    Ok(SweepRange {
        start: start_v,
        stop: stop_v,
        count: n,
    })
}

impl RunConfig {
    pub fn from_settings(mode: Mode, settings: &Settings) -> Result<Self, CliError> {
        if let Some(file_mode) = settings.values.get("mode") {
            let file_mode: Mode = file_mode.parse()?;
            if file_mode != mode {
                return Err(CliError::config(
                    "mode",
                    format!("config file says `{file_mode}` but subcommand is `{mode}`"),
                ));
            }
        }

        let atom = wrap("gamma", AtomParams::new(settings.float("gamma")?))?;
        let omega = settings.float("omega")?;
        let eta = settings.float("eta")?;
        let coupling = CouplingParams::new(omega, eta).map_err(|e| match e {
            atomscatter::Error::InvalidParameter { name, reason } => CliError::config(name, reason),
            other => CliError::config("omega", other.to_string()),
        })?;
        let saturation = settings.float("saturation")?;
        let phi0 = settings.float("phi0")?;
        let drive = DriveParams::new(settings.float("power")?, phi0, saturation).map_err(|e| match e {
            atomscatter::Error::InvalidParameter { name, reason } => CliError::config(name, reason),
            other => CliError::config("power", other.to_string()),
        })?;
        let pulse = wrap("a0", PulseParams::new(settings.float("a0")?, atom))?;

        let grid_n = settings.count("grid-n")?;
        let grid_span = settings.float("grid-span")?;
        let grid = DetuningGrid::new(grid_n, grid_span * atom.gamma()).map_err(|e| match e {
            atomscatter::Error::InvalidParameter { name: "grid_n", reason } => CliError::config("grid-n", reason),
            other => CliError::config("grid-span", other.to_string()),
        })?;

        let delta = SweepRange {
            start: settings.float("delta-start")?,
            stop: settings.float("delta-stop")?,
            count: settings.count("delta-count")?,
        };
        if delta.count < 1 {
            return Err(CliError::config("delta-count", "must be >= 1"));
        }

        let time_window = settings.float("time-window")?;
        if time_window < 0.0 {
            return Err(CliError::config(
                "time-window",
                format!("must be >= 0, got {time_window}"),
            ));
        }
        let spectrum_stride = settings.count("spectrum-stride")?;
        if spectrum_stride < 1 {
            return Err(CliError::config("spectrum-stride", "must be >= 1"));
        }

        let omega_range = range(settings, "omega", "omega-start", "omega-stop", "omega-count")?;
        let eta_range = range(settings, "eta", "eta-start", "eta-stop", "eta-count")?;
        if mode == Mode::Sweep {
            for (key, r) in [("omega-start", omega_range), ("eta-start", eta_range)] {
                for v in [r.start, r.stop] {
                    if !(0.0..=1.0).contains(&v) {
                        return Err(CliError::config(
                            key,
                            format!("sweep bounds must lie in [0, 1], got {v}"),
                        ));
                    }
                }
            }
        }

        let pattern: DipolePattern = wrap("pattern", settings.raw("pattern").parse())?;
        let aperture = AngularAperture::new(
            settings.float("theta-min")?,
            settings.float("theta-max")?,
            settings.float("phi-min")?,
            settings.float("phi-max")?,
        )
        .map_err(|e| match e {
            atomscatter::Error::InvalidParameter { name, reason } => CliError::config(&name.replace('_', "-"), reason),
            other => CliError::config("theta-min", other.to_string()),
        })?;
        let quadrature =
            QuadratureSpec::new(settings.count("quad-order")?, settings.float("quad-tol")?).map_err(|e| match e {
                atomscatter::Error::InvalidParameter { name: "order", reason } => {
                    CliError::config("quad-order", reason)
                }
                other => CliError::config("quad-tol", other.to_string()),
            })?;

        let format: Format = settings.raw("format").parse()?;
        let out = match settings.raw("out") {
            "" => None,
            p => Some(PathBuf::from(p)),
        };

        let echo = KEYS
            .iter()
            .filter(|(k, _)| *k != "out" && *k != "format")
            .filter(|(k, _)| relevant(mode, k) || settings.is_set(k))
            .map(|(k, _)| (k.to_string(), settings.raw(k).to_string()))
            .collect();

        Ok(RunConfig {
            mode,
            atom,
            coupling,
            drive,
            pulse,
            grid,
            delta,
            time_window,
            spectrum_stride,
            omega_range,
            eta_range,
            pattern,
            aperture,
            quadrature,
            format,
            out,
            echo,
        })
    }
}

fn relevant(mode: Mode, key: &str) -> bool {
    let common = ["gamma"];
    let keys: &[&str] = match mode {
        Mode::Mono => &[
            "omega",
            "eta",
            "power",
            "phi0",
            "saturation",
            "delta-start",
            "delta-stop",
            "delta-count",
        ],
        Mode::Pulse => &[
            "omega",
            "eta",
            "a0",
            "phi0",
            "grid-n",
            "grid-span",
            "time-window",
            "spectrum-stride",
        ],
        Mode::Sweep => &[
            "omega",
            "eta",
            "a0",
            "power",
            "grid-n",
            "grid-span",
            "omega-start",
            "omega-stop",
            "omega-count",
            "eta-start",
            "eta-stop",
            "eta-count",
        ],
        Mode::SolidAngle => &[
            "pattern",
            "theta-min",
            "theta-max",
            "phi-min",
            "phi-max",
            "quad-order",
            "quad-tol",
        ],
    };
    common.contains(&key) || keys.contains(&key)
}
