//! Finite-dimensional laws of ggBm, and the one-dimensional coincidence with
//! time-changed Brownian motion.

use ggbm_core::ensemble::{mean_and_se, run_ensemble};
use ggbm_core::paths::{sample_tcbm, DyadicGrid, GgbmSampler, TimeChangeConfig};
use ggbm_core::specfun::{gamma, mittag_leffler};

use super::{block, column, Artifact, SE_FACTOR};
use crate::config::ExperimentConfig;
use crate::error::CliResult;
use crate::report::{Report, Rule};

const COV_PAIRS: [(f64, f64); 3] = [(0.25, 0.5), (0.5, 1.0), (0.25, 1.0)];
const THETAS: [f64; 2] = [0.5, 1.0];

/// Covariance, second and fourth moments and increment characteristic
/// function of ggBm on the level-`level` grid.
pub(super) fn run_ggbm_law(cfg: &ExperimentConfig, report: &mut Report) -> CliResult<Vec<Artifact>> {
    let (beta, alpha) = (cfg.beta(), cfg.alpha);
    let grid = DyadicGrid::new(cfg.level)?;
    let sampler = GgbmSampler::new(beta, alpha, grid)?;
    let times = [0.25, 0.5, 1.0];
    let rows = run_ensemble(&block(cfg, 0, cfg.replicas), |rng, _| {
        let p = sampler.sample(rng);
        Ok(times.iter().map(|&t| p.value_at(t).unwrap_or(f64::NAN)).collect::<Vec<f64>>())
    })?;
    let at = |t: f64| column(&rows, times.iter().position(|&s| s == t).unwrap_or(0));
    let g1 = gamma(1.0 + beta)?;

    for (s, t) in COV_PAIRS {
        let prod: Vec<f64> = at(s).iter().zip(at(t)).map(|(a, b)| a * b).collect();
        let target = (s.powf(alpha) + t.powf(alpha) - (t - s).abs().powf(alpha)) / (2.0 * g1);
        let (m, se) = mean_and_se(&prod);
        report.check(&format!("cov_s{s}_t{t}"), Rule::WithinSe, target, m, se, SE_FACTOR);
    }

    let end = at(1.0);
    // E B(t)^{2n} = (2n)! / (2^n Gamma(1 + beta n)) t^{n alpha}
    for (n, factor) in [(1, 1.0), (2, 6.0)] {
        let pow: Vec<f64> = end.iter().map(|x| x.powi(2 * n)).collect();
        let target = factor / gamma(1.0 + beta * n as f64)?;
        let (m, se) = mean_and_se(&pow);
        report.check(&format!("moment{}_t1", 2 * n), Rule::WithinSe, target, m, se, SE_FACTOR);
    }

    let inc: Vec<f64> = end.iter().zip(at(0.5)).map(|(b, a)| b - a).collect();
    for theta in THETAS {
        let cf: Vec<f64> = inc.iter().map(|d| (theta * d).cos()).collect();
        let target = mittag_leffler(beta, -theta * theta * 0.5f64.powf(alpha) / 2.0)?;
        let (m, se) = mean_and_se(&cf);
        report.check(
            &format!("cf_increment_s0.5_t1_theta{theta}"),
            Rule::WithinSe,
            target,
            m,
            se,
            SE_FACTOR,
        );
    }
    Ok(Vec::new())
}

/// One-dimensional characteristic functions of ggBm and TCBM, and the
/// increment second moments that tell them apart. Both processes only need
/// the quarter grid, so `level` is not used.
pub(super) fn run_onedim(cfg: &ExperimentConfig, report: &mut Report) -> CliResult<Vec<Artifact>> {
    let (beta, alpha) = (cfg.beta(), cfg.alpha);
    let grid = DyadicGrid::new(2)?;
    let times = [0.5, 0.75, 1.0];
    let sampler = GgbmSampler::new(beta, alpha, grid)?;
    let ggbm = run_ensemble(&block(cfg, 0, cfg.replicas), |rng, _| {
        let p = sampler.sample(rng);
        Ok(times.iter().map(|&t| p.value_at(t).unwrap_or(f64::NAN)).collect::<Vec<f64>>())
    })?;
    let tc = TimeChangeConfig {
        operational_level: cfg.operational_level,
        ..TimeChangeConfig::default()
    };
    let tcbm = run_ensemble(&block(cfg, 1, cfg.replicas), |rng, _| {
        let p = sample_tcbm(beta, alpha, grid, &tc, rng)?;
        Ok(times.iter().map(|&t| p.value_at(t).unwrap_or(f64::NAN)).collect::<Vec<f64>>())
    })?;

    for (label, rows) in [("ggbm", &ggbm), ("tcbm", &tcbm)] {
        for (j, t) in [(0usize, 0.5), (2, 1.0)] {
            let x = column(rows, j);
            for theta in THETAS {
                let cf: Vec<f64> = x.iter().map(|v| (theta * v).cos()).collect();
                let target = mittag_leffler(beta, -theta * theta * f64::powf(t, alpha) / 2.0)?;
                let (m, se) = mean_and_se(&cf);
                report.check(
                    &format!("cf_{label}_t{t}_theta{theta}"),
                    Rule::WithinSe,
                    target,
                    m,
                    se,
                    SE_FACTOR,
                );
            }
        }
    }

    let g1 = gamma(1.0 + beta)?;
    let (s, t) = (0.5f64, 0.75f64);
    let sq = |rows: &[Vec<f64>]| -> Vec<f64> { rows.iter().map(|r| (r[1] - r[0]).powi(2)).collect() };
    let (mg, seg) = mean_and_se(&sq(&ggbm));
    let (mt, set) = mean_and_se(&sq(&tcbm));
    report.check(
        "inc2_ggbm_s0.5_t0.75",
        Rule::WithinSe,
        (t - s).powf(alpha) / g1,
        mg,
        seg,
        SE_FACTOR,
    );
    report.check(
        "inc2_tcbm_s0.5_t0.75",
        Rule::WithinSe,
        (t.powf(alpha) - s.powf(alpha)) / g1,
        mt,
        set,
        SE_FACTOR,
    );
    report.check(
        "inc2_difference",
        Rule::ApartSe,
        0.0,
        mt - mg,
        seg.hypot(set),
        5.0,
    );
    Ok(Vec::new())
}
