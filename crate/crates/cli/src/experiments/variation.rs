//! Per-path variation limits and variation-index estimates.

use std::fmt::Write as _;

use ggbm_core::ensemble::{median, run_ensemble};
use ggbm_core::paths::io::format_f64;
use ggbm_core::paths::{
    sample_bm, sample_tcbm, sample_tcbm_with_clock, DyadicGrid, FbmMethod, FbmSampler, GgbmSampler,
    Path, TimeChangeConfig,
};
use ggbm_core::specfun::mu_beta_alpha;
use ggbm_core::variation::{dyadic_sums, estimate_index};
use ggbm_core::sampling::RngStream;

use super::{block, Artifact};
use crate::config::ExperimentConfig;
use crate::error::CliResult;
use crate::report::{Report, Rule};

/// Relative band each TCBM replica's quadratic sum must hit around its own clock.
const PER_PATH_BAND: f64 = 0.1;

fn time_change(cfg: &ExperimentConfig) -> TimeChangeConfig {
    TimeChangeConfig {
        operational_level: cfg.operational_level,
        ..TimeChangeConfig::default()
    }
}

/// ggBm `2/alpha`-sums against `mu_{beta,alpha}`, and TCBM quadratic sums
/// against the same replica's clock `U(1)`.
pub(super) fn run_limits(cfg: &ExperimentConfig, report: &mut Report) -> CliResult<Vec<Artifact>> {
    let (beta, alpha, level) = (cfg.beta(), cfg.alpha, cfg.level);
    let grid = DyadicGrid::new(level)?;
    let sampler = GgbmSampler::new(beta, alpha, grid)?;
    let ggbm = run_ensemble(&block(cfg, 0, cfg.replicas), |rng, _| {
        Ok(dyadic_sums(&sampler.sample(rng), 2.0 / alpha, &[level])?.sums[0])
    })?;
    let tc = time_change(cfg);
    let tcbm = run_ensemble(&block(cfg, 1, cfg.replicas), |rng, _| {
        let (path, clock) = sample_tcbm_with_clock(beta, alpha, grid, &tc, rng)?;
        let qv = dyadic_sums(&path, 2.0, &[level])?.sums[0];
        Ok((qv, clock.values.last().copied().unwrap_or(0.0)))
    })?;

    let mu = mu_beta_alpha(beta, alpha)?;
    report.check(
        &format!("ggbm_median_sum_level{level}"),
        Rule::WithinRel,
        mu,
        median(&ggbm),
        0.0,
        0.1,
    );
    let hits = tcbm
        .iter()
        .filter(|(qv, u)| (qv - u).abs() <= PER_PATH_BAND * u)
        .count();
    report.check(
        &format!("tcbm_qv_matches_clock_fraction_level{level}"),
        Rule::AtLeast,
        1.0,
        hits as f64 / tcbm.len() as f64,
        0.0,
        0.9,
    );

    let mut csv = String::from("replica,ggbm_sum,tcbm_quadratic_sum,tcbm_clock\n");
    for (i, (g, (qv, u))) in ggbm.iter().zip(&tcbm).enumerate() {
        let _ = writeln!(csv, "{i},{},{},{}", format_f64(*g), format_f64(*qv), format_f64(*u));
    }
    Ok(vec![Artifact {
        name: "variation_replicas.csv".into(),
        contents: csv,
    }])
}

fn p_grid() -> Vec<f64> {
    (0..=40).map(|k| 1.0 + 0.05 * k as f64).collect()
}

/// Median estimated index of Bm, fBm, ggBm and TCBM paths.
pub(super) fn run_index(cfg: &ExperimentConfig, report: &mut Report) -> CliResult<Vec<Artifact>> {
    let (beta, alpha, level) = (cfg.beta(), cfg.alpha, cfg.level);
    let grid = DyadicGrid::new(level)?;
    let levels: Vec<u32> = (level.saturating_sub(6).max(1)..=level).collect();
    let probes = p_grid();
    let fbm = FbmSampler::new(cfg.hurst, grid, FbmMethod::Circulant)?;
    let ggbm = GgbmSampler::new(beta, alpha, grid)?;
    let tc = time_change(cfg);

    type Sampler<'a> = Box<dyn Fn(&mut RngStream) -> ggbm_core::Result<Path> + Sync + 'a>;
    let cases: Vec<(&str, f64, f64, Sampler)> = vec![
        ("bm", 2.0, 0.15, Box::new(|rng| Ok(sample_bm(grid, rng)))),
        ("fbm", 1.0 / cfg.hurst, 0.1, Box::new(|rng| Ok(fbm.sample(rng)))),
        ("ggbm", 2.0 / alpha, 0.1, Box::new(|rng| Ok(ggbm.sample(rng)))),
        ("tcbm", 2.0, 0.15, Box::new(|rng| sample_tcbm(beta, alpha, grid, &tc, rng))),
    ];
    let mut csv = String::from("process,replica,index\n");
    for (k, (name, target, tol, sample)) in cases.iter().enumerate() {
        let est = run_ensemble(&block(cfg, k as u64, cfg.replicas), |rng, _| {
            // a path without a sign change on the probe grid has no estimate
            Ok(estimate_index(&sample(rng)?, &probes, &levels).map_or(f64::NAN, |e| e.v_hat))
        })?;
        for (i, v) in est.iter().enumerate() {
            let _ = writeln!(csv, "{name},{i},{}", format_f64(*v));
        }
        report.check(
            &format!("index_{name}_level{level}"),
            Rule::WithinAbs,
            *target,
            median(&est),
            0.0,
            *tol,
        );
    }
    Ok(vec![Artifact {
        name: "index_replicas.csv".into(),
        contents: csv,
    }])
}
