use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Arg, ArgAction, ArgMatches, Command};

use atomscatter_cli::config::KEYS;
use atomscatter_cli::run::{pulse_report, run};
use atomscatter_cli::{CliError, Format, Mode, Report, RunConfig, Settings};

const MODES: [(Mode, &str); 4] = [
    (
        Mode::Mono,
        "Steady-state response to a monochromatic drive over a detuning range",
    ),
    (
        Mode::Pulse,
        "Rising-exponential pulse: spectra, time-domain envelopes, absorbed fraction",
    ),
    (
        Mode::Sweep,
        "Absorbed fraction over a grid of solid-angle fractions and overlaps",
    ),
    (Mode::SolidAngle, "Dipole-weighted solid angle of an angular aperture"),
];

fn subcommand(mode: Mode, about: &'static str) -> Command {
    let mut cmd = Command::new(mode.name()).about(about).arg(
        Arg::new("config")
            .long("config")
            .short('c')
            .value_name("FILE")
            .help("key = value file; command-line flags override it"),
    );
    for (key, default) in KEYS {
        let help = if default.is_empty() {
            String::new()
        } else {
            format!("[default: {default}]")
        };
        cmd = cmd.arg(
            Arg::new(*key)
                .long(*key)
                .value_name("VALUE")
                .allow_hyphen_values(true)
                .action(ArgAction::Set)
                .help(help),
        );
    }
    cmd
}

fn cli() -> Command {
    let mut cmd = Command::new("atomscatter")
        .version(env!("CARGO_PKG_VERSION"))
        .about("Elastic scattering of light by a single two-level atom")
        .subcommand_required(true)
        .arg_required_else_help(true);
    for (mode, about) in MODES {
        cmd = cmd.subcommand(subcommand(mode, about));
    }
    cmd
}

fn settings(matches: &ArgMatches) -> Result<Settings, CliError> {
    let mut settings = match matches.get_one::<String>("config") {
        Some(path) => Settings::load(&PathBuf::from(path))?,
        None => Settings::default(),
    };
    let mut overrides = Settings::default();
    for (key, _) in KEYS {
        if let Some(v) = matches.get_one::<String>(key) {
            overrides.set(key, v)?;
        }
    }
    settings.merge(&overrides);
    Ok(settings)
}

fn emit(report: &Report, config: &RunConfig) -> Result<(), CliError> {
    match (&config.out, config.format) {
        (None, Format::Csv) => std::io::stdout().write_all(report.to_csv().as_bytes())?,
        (None, Format::Json) => std::io::stdout().write_all(report.to_json().as_bytes())?,
        (Some(path), Format::Csv) => {
            report.write_csv_files(path)?;
        }
        (Some(path), Format::Json) => std::fs::write(path, report.to_json())?,
    }
    Ok(())
}

fn execute(mode: Mode, matches: &ArgMatches) -> Result<(), CliError> {
    let config = RunConfig::from_settings(mode, &settings(matches)?)?;
    if mode == Mode::Pulse {
        // Tables are written even when the absorbed-fraction check fails.
        let (report, failure) = pulse_report(&config)?;
        emit(&report, &config)?;
        return match failure {
            Some(msg) => Err(CliError::Tolerance(msg)),
            None => Ok(()),
        };
    }
    let report = run(&config)?;
    emit(&report, &config)
}

fn main() -> ExitCode {
    let matches = cli().get_matches();
    let (name, sub) = matches.subcommand().expect("subcommand required");
    let mode: Mode = name.parse().expect("registered subcommand");
    match execute(mode, sub) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("atomscatter: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
