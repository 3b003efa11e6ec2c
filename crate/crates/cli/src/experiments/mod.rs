//! Seeded experiments, each producing a [`Report`] and CSV artifacts.
//!
//! Every sub-ensemble of an experiment draws from its own block of `2^32`
//! stream indices under the configured seed, so results depend only on the
//! configuration and never on the thread count.

mod fpp;
mod law;
mod samplers;
mod sde;
mod singularity;
mod specfun;
mod variation;

use std::fs;
use std::path::{Path, PathBuf};

use ggbm_core::ensemble::EnsembleConfig;

use crate::config::{ExperimentConfig, ExperimentKind};
use crate::error::{CliError, CliResult};
use crate::report::Report;

/// A named CSV produced next to the report.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub name: String,
    pub contents: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentOutput {
    pub report: Report,
    pub artifacts: Vec<Artifact>,
}

impl ExperimentOutput {
    /// Writes `report.md`, `report.csv` and the artifacts into `dir`.
    pub fn write_to(&self, dir: &Path) -> CliResult<Vec<PathBuf>> {
        fs::create_dir_all(dir).map_err(|e| CliError::io(format!("creating {}", dir.display()), e))?;
        let mut files = vec![
            ("report.md".to_string(), self.report.to_markdown()),
            ("report.csv".to_string(), self.report.to_csv()),
        ];
        files.extend(self.artifacts.iter().map(|a| (a.name.clone(), a.contents.clone())));
        let mut written = Vec::with_capacity(files.len());
        for (name, contents) in files {
            let path = dir.join(name);
            fs::write(&path, contents).map_err(|e| CliError::io(format!("writing {}", path.display()), e))?;
            written.push(path);
        }
        Ok(written)
    }
}

pub fn run_experiment(cfg: &ExperimentConfig) -> CliResult<ExperimentOutput> {
    cfg.validate()?;
    let mut report = Report::new(cfg.kind.as_str(), cfg.echo(), cfg.tolerances.clone());
    let artifacts = match cfg.kind {
        ExperimentKind::Specfun => specfun::run(&mut report)?,
        ExperimentKind::Samplers => samplers::run(cfg, &mut report)?,
        ExperimentKind::GgbmLaw => law::run_ggbm_law(cfg, &mut report)?,
        ExperimentKind::Onedim => law::run_onedim(cfg, &mut report)?,
        ExperimentKind::Variation => variation::run_limits(cfg, &mut report)?,
        ExperimentKind::Index => variation::run_index(cfg, &mut report)?,
        ExperimentKind::Singularity => singularity::run(cfg, &mut report)?,
        ExperimentKind::Fpp => fpp::run(cfg, &mut report)?,
        ExperimentKind::Sde => sde::run(cfg, &mut report)?,
    };
    Ok(ExperimentOutput { report, artifacts })
}

/// Ensemble of `replicas` on stream block `block`.
fn block(cfg: &ExperimentConfig, block: u64, replicas: usize) -> EnsembleConfig {
    EnsembleConfig::new(cfg.seed, replicas, cfg.threads).with_offset(block << 32)
}

/// Default number of standard errors for Monte Carlo comparisons.
const SE_FACTOR: f64 = 3.0;

fn column(rows: &[Vec<f64>], j: usize) -> Vec<f64> {
    rows.iter().map(|r| r[j]).collect()
}
