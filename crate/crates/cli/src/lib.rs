//! Experiment runner and command-line front end for `ggbm-core`.
//!
//! [`experiments::run_experiment`] turns an [`config::ExperimentConfig`] into a
//! [`report::Report`] plus CSV artifacts; the `ggbm` binary wraps it together
//! with subcommands for evaluating, sampling, measuring and classifying paths.

pub mod app;
pub mod config;
pub mod error;
pub mod experiments;
pub mod report;

pub use config::{ExperimentConfig, ExperimentKind};
pub use error::{CliError, CliResult};
pub use experiments::{run_experiment, ExperimentOutput};
pub use report::{Report, Rule};
