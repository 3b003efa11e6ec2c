//! Young and time-changed LINEAR equations and solution-level classification.

use std::fmt::Write as _;

use ggbm_core::ensemble::{mean_and_se, median, run_ensemble};
use ggbm_core::paths::io::format_f64;
use ggbm_core::paths::{sample_clock_for_grid, DyadicGrid, GgbmSampler, TimeChangeConfig};
use ggbm_core::sde::{solution_singularity_experiment, solve_on_clock, solve_young, CoefficientSpec};

use super::singularity::{matrix_csv, setup};
use super::{block, Artifact, SE_FACTOR};
use crate::config::ExperimentConfig;
use crate::error::CliResult;
use crate::report::{Report, Rule};

/// Grid of the mean check. The exponential martingale keeps its mean on any
/// clock, so a coarse grid and operational level suffice there.
const MEAN_GRID_LEVEL: u32 = 4;
const MEAN_OPERATIONAL_LEVEL: u32 = 8;

pub(super) fn run(cfg: &ExperimentConfig, report: &mut Report) -> CliResult<Vec<Artifact>> {
    let (beta, alpha, c, x0) = (cfg.beta(), cfg.alpha, cfg.coefficient, cfg.x0);
    let linear = CoefficientSpec::linear(c);
    let mut artifacts = Vec::new();

    // Young equation: Euler along ggBm drivers against x0 exp(c B)
    let grid = DyadicGrid::new(cfg.level)?;
    let sampler = GgbmSampler::new(beta, alpha, grid)?;
    let levels: Vec<u32> = (cfg.min_level..=cfg.level).collect();
    let errors = run_ensemble(&block(cfg, 1, cfg.paths), |rng, _| {
        let driver = sampler.sample(rng);
        levels
            .iter()
            .map(|&m| {
                let coarse = driver.subsample(m)?;
                let sol = solve_young(&linear, None, x0, &coarse)?;
                Ok(sol
                    .path
                    .values()
                    .iter()
                    .zip(coarse.values())
                    .map(|(x, b)| {
                        let exact = x0 * (c * b).exp();
                        ((x - exact) / exact).abs()
                    })
                    .fold(0.0, f64::max))
            })
            .collect::<ggbm_core::Result<Vec<f64>>>()
    })?;
    let mut csv = String::from("replica,level,sup_relative_error\n");
    for (i, row) in errors.iter().enumerate() {
        for (m, e) in levels.iter().zip(row) {
            let _ = writeln!(csv, "{i},{m},{}", format_f64(*e));
        }
    }
    artifacts.push(Artifact {
        name: "young_errors.csv".into(),
        contents: csv,
    });
    let medians: Vec<f64> = (0..levels.len())
        .map(|j| median(&errors.iter().map(|r| r[j]).collect::<Vec<_>>()))
        .collect();
    for (m, e) in levels.iter().zip(&medians) {
        let top = *m == cfg.level;
        report.check(
            &format!("young_sup_error_level{m}"),
            Rule::AtMost,
            0.0,
            *e,
            0.0,
            if top { 0.02 } else { f64::INFINITY },
        );
    }
    let rises = medians.windows(2).filter(|w| w[1] >= w[0]).count();
    report.check("young_error_nondecreasing_steps", Rule::AtMost, 0.0, rises as f64, 0.0, 0.0);

    // time-changed equation: Euler-Maruyama on the clock grid keeps E Y(1) = y0
    let mean_grid = DyadicGrid::new(MEAN_GRID_LEVEL)?;
    let tc = TimeChangeConfig {
        operational_level: MEAN_OPERATIONAL_LEVEL,
        ..TimeChangeConfig::default()
    };
    let one = CoefficientSpec::constant(1.0);
    let ends = run_ensemble(&block(cfg, 2, cfg.replicas), |rng, _| {
        let clock = sample_clock_for_grid(beta, alpha, mean_grid, &tc, rng)?;
        let u = clock.values.last().copied().unwrap_or(0.0);
        // same Gaussian draws: W(U) for the inner closed form
        let mut twin = rng.clone();
        let euler = solve_on_clock(&linear, None, x0, beta, alpha, mean_grid, clock.clone(), rng)?;
        let w = solve_on_clock(&one, None, 0.0, beta, alpha, mean_grid, clock, &mut twin)?;
        let closed = x0 * (c * w.path.terminal() - 0.5 * c * c * u).exp();
        Ok((euler.path.terminal(), closed))
    })?;
    let euler: Vec<f64> = ends.iter().map(|e| e.0).collect();
    let closed: Vec<f64> = ends.iter().map(|e| e.1).collect();
    let (m, se) = mean_and_se(&euler);
    report.check("time_changed_mean_euler", Rule::WithinSe, x0, m, se, SE_FACTOR);
    let (m, se) = mean_and_se(&closed);
    report.check("time_changed_mean_closed_form", Rule::WithinSe, x0, m, se, SE_FACTOR);

    // solution paths through the discriminator
    let matrix = solution_singularity_experiment(
        &linear,
        &linear,
        x0,
        beta,
        alpha,
        &setup(cfg, cfg.n_per_class, cfg.level),
    )?;
    report.check(
        &format!("solution_accuracy_level{}", cfg.level),
        Rule::AtLeast,
        1.0,
        matrix.accuracy(),
        0.0,
        0.9,
    );
    report.check(
        &format!("solution_inconclusive_level{}", cfg.level),
        Rule::AtMost,
        0.0,
        matrix.inconclusive_rate(),
        0.0,
        1.0,
    );
    artifacts.push(Artifact {
        name: "solution_confusion.csv".into(),
        contents: matrix_csv(&matrix)?,
    });
    Ok(artifacts)
}
