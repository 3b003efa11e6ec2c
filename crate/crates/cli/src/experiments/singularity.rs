//! Confusion matrices of the ggBm/TCBM discriminator across grid levels.

use std::fmt::Write as _;

use ggbm_core::discriminate::{confusion_experiment, ConfusionMatrix, ConfusionSetup, DiscriminatorConfig};
use ggbm_core::paths::TimeChangeConfig;

use super::Artifact;
use crate::config::ExperimentConfig;
use crate::error::CliResult;
use crate::report::{Report, Rule};

pub(super) fn setup(cfg: &ExperimentConfig, n_per_class: usize, level: u32) -> ConfusionSetup {
    ConfusionSetup {
        n_per_class,
        level,
        seed: cfg.seed,
        threads: cfg.threads,
        discriminator: DiscriminatorConfig {
            window: cfg.window,
            eps_stable: cfg.eps_stable,
            eps_trend: cfg.eps_trend,
        },
        time_change: TimeChangeConfig {
            operational_level: cfg.operational_level,
            ..TimeChangeConfig::default()
        },
    }
}

pub(super) fn matrix_csv(m: &ConfusionMatrix) -> CliResult<String> {
    let mut out = Vec::new();
    m.write_csv(&mut out)?;
    Ok(String::from_utf8_lossy(&out).into_owned())
}

/// Levels `min_level..=level`; the floors apply at `level`, lower levels are
/// recorded to show the trend.
pub(super) fn run(cfg: &ExperimentConfig, report: &mut Report) -> CliResult<Vec<Artifact>> {
    let (beta, alpha) = (cfg.beta(), cfg.alpha);
    let mut artifacts = Vec::new();
    let mut summary = String::from("level,true_class,GGBM,TCBM,INCONCLUSIVE\n");
    let mut accuracies = Vec::new();
    let min_level = cfg.min_level.max(cfg.window);
    for level in min_level..=cfg.level {
        let m = confusion_experiment(beta, alpha, &setup(cfg, cfg.replicas, level))?;
        for (class, row) in ["ggbm", "tcbm"].iter().zip(m.counts) {
            let _ = writeln!(summary, "{level},{class},{},{},{}", row[0], row[1], row[2]);
        }
        let top = level == cfg.level;
        report.check(
            &format!("accuracy_level{level}"),
            Rule::AtLeast,
            1.0,
            m.accuracy(),
            0.0,
            if top { 0.95 } else { 0.0 },
        );
        report.check(
            &format!("inconclusive_level{level}"),
            Rule::AtMost,
            0.0,
            m.inconclusive_rate(),
            0.0,
            if top { 0.05 } else { 1.0 },
        );
        accuracies.push(m.accuracy());
        artifacts.push(Artifact {
            name: format!("confusion_level{level}.csv"),
            contents: matrix_csv(&m)?,
        });
    }
    let drops = accuracies.windows(2).filter(|w| w[1] < w[0]).count();
    report.check("accuracy_decreases_across_levels", Rule::AtMost, 0.0, drops as f64, 0.0, 0.0);
    artifacts.push(Artifact {
        name: "confusion_summary.csv".into(),
        contents: summary,
    });
    Ok(artifacts)
}
