//! Monte Carlo checks of the stable, M-Wright and Mittag-Leffler samplers.

use ggbm_core::ensemble::{mean_and_se, run_ensemble};
use ggbm_core::sampling::{sample_m_wright, sample_ml_waiting_time, sample_positive_stable, StableParams};
use ggbm_core::specfun::{m_wright_moment, mittag_leffler};

use super::{block, Artifact, SE_FACTOR};
use crate::config::ExperimentConfig;
use crate::error::CliResult;
use crate::report::{Report, Rule};

const THETAS: [f64; 3] = [0.5, 1.0, 2.0];
const DELTAS: [f64; 3] = [0.5, 1.0, 2.0];
const TIMES: [f64; 3] = [0.5, 1.0, 2.0];

fn check_mean(report: &mut Report, name: &str, xs: &[f64], target: f64) {
    let (m, se) = mean_and_se(xs);
    report.check(name, Rule::WithinSe, target, m, se, SE_FACTOR);
}

pub(super) fn run(cfg: &ExperimentConfig, report: &mut Report) -> CliResult<Vec<Artifact>> {
    let n = cfg.replicas;
    for (k, &beta) in cfg.betas.iter().enumerate() {
        let params = StableParams::new(beta)?;
        let base = 3 * k as u64;

        let s = run_ensemble(&block(cfg, base, n), |rng, _| Ok(sample_positive_stable(&params, rng)))?;
        for theta in THETAS {
            let lt: Vec<f64> = s.iter().map(|x| (-theta * x).exp()).collect();
            check_mean(
                report,
                &format!("stable_laplace_beta{beta}_theta{theta}"),
                &lt,
                (-f64::powf(theta, beta)).exp(),
            );
        }

        let y = run_ensemble(&block(cfg, base + 1, n), |rng, _| Ok(sample_m_wright(&params, rng)))?;
        for delta in DELTAS {
            let pow: Vec<f64> = y.iter().map(|x| x.powf(delta)).collect();
            check_mean(
                report,
                &format!("mwright_moment_beta{beta}_delta{delta}"),
                &pow,
                m_wright_moment(beta, delta)?,
            );
        }

        let lambda = cfg.lambda;
        let j = run_ensemble(&block(cfg, base + 2, n), |rng, _| {
            Ok(sample_ml_waiting_time(&params, lambda, rng))
        })?;
        for t in TIMES {
            let surv: Vec<f64> = j.iter().map(|&x| if x > t { 1.0 } else { 0.0 }).collect();
            check_mean(
                report,
                &format!("ml_survival_beta{beta}_t{t}"),
                &surv,
                mittag_leffler(beta, -lambda * t.powf(beta))?,
            );
        }
    }
    Ok(Vec::new())
}
