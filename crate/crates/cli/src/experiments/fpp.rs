//! Counting laws of the fractional and fractal-time Poisson processes.

use std::fmt::Write as _;

use ggbm_core::ensemble::{mean_and_se, run_ensemble};
use ggbm_core::paths::io::format_f64;
use ggbm_core::paths::{count_at, fpp_pgf, fpp_pmf, sample_fpp, sample_ftpp, TimeChangeConfig};

use super::{block, Artifact, SE_FACTOR};
use crate::config::ExperimentConfig;
use crate::error::CliResult;
use crate::report::{Report, Rule};

const MAX_N: u32 = 5;

pub(super) fn run(cfg: &ExperimentConfig, report: &mut Report) -> CliResult<Vec<Artifact>> {
    let (beta, lambda, t) = (cfg.beta(), cfg.lambda, cfg.time);
    let renewal = run_ensemble(&block(cfg, 0, cfg.replicas), |rng, _| {
        Ok(count_at(&sample_fpp(beta, lambda, t, rng)?, t))
    })?;
    let tc = TimeChangeConfig {
        operational_level: cfg.operational_level,
        ..TimeChangeConfig::default()
    };
    // a single probe time makes the clock draw exact
    let clocked = run_ensemble(&block(cfg, 1, cfg.replicas), |rng, _| {
        Ok(sample_ftpp(beta, lambda, &[t], &tc, rng)?[0])
    })?;

    let mut table = String::from("n,pmf,fpp_frequency,ftpp_frequency\n");
    let freq = |c: &[u64], n: u64| c.iter().filter(|&&x| x == n).count() as f64 / c.len() as f64;
    for n in 0..=MAX_N {
        let target = fpp_pmf(n, t, beta, lambda)?;
        for (label, counts) in [("fpp", &renewal), ("ftpp", &clocked)] {
            let m = freq(counts, n.into());
            // binomial standard error under the target law; stays positive when no replica hits n
            let se = (target * (1.0 - target) / counts.len() as f64).sqrt();
            report.check(&format!("pmf_{label}_n{n}"), Rule::WithinSe, target, m, se, SE_FACTOR);
        }
        let _ = writeln!(
            table,
            "{n},{},{},{}",
            format_f64(target),
            format_f64(freq(&renewal, n.into())),
            format_f64(freq(&clocked, n.into()))
        );
    }
    for z in [0.0f64, 0.5, 1.0] {
        let target = fpp_pgf(z, t, beta, lambda)?;
        for (label, counts) in [("fpp", &renewal), ("ftpp", &clocked)] {
            let zn: Vec<f64> = counts.iter().map(|&c| z.powi(c as i32)).collect();
            let (m, se) = mean_and_se(&zn);
            let name = format!("pgf_{label}_z{z}");
            if z == 1.0 {
                // both sides are exactly one
                report.check(&name, Rule::WithinAbs, target, m, se, 1e-12);
            } else {
                report.check(&name, Rule::WithinSe, target, m, se, SE_FACTOR);
            }
        }
    }
    Ok(vec![Artifact {
        name: "counts.csv".into(),
        contents: table,
    }])
}
