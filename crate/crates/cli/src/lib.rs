//! Library half of the `atomscatter` command-line tool: configuration,
//! subcommand drivers and output formatting.

pub mod config;
pub mod error;
pub mod output;
pub mod run;

pub use config::{Format, Mode, RunConfig, Settings};
pub use error::CliError;
pub use output::Report;
