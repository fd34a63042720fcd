//! Experiment harness around `histopol-core`: configuration, support
//! families, figure experiments, CSV/SVG output.

pub mod commands;
pub mod config;
pub mod error;
pub mod experiments;
pub mod families;
pub mod svg;

pub use commands::{run, Command, Report, RunContext};
pub use config::ExperimentConfig;
pub use error::CliError;
pub use families::{Family, SupportSource};
