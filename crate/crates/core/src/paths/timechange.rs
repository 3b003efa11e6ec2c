//! The inverse stable clock `U(t) = inf{s : S(s) > t^{alpha/beta}}` and TCBM `W(U(t))`.
//!
//! `S` is walked forward on an operational grid of step `delta`, one stable
//! increment `delta^{1/beta} S_1` at a time, and `U(t)` is read off as the
//! first grid time at which `S` exceeds the level `t^{alpha/beta}`. Walking the
//! evaluation times in increasing order visits each operational step once, so
//! the cost is linear in `U(max t) / delta`. The discretisation overestimates
//! `U` by less than `delta`.
//!
//! When only one positive time is requested the clock is drawn exactly from
//! `U(t) = t^alpha Y`, `Y ~ M_beta`, with no grid at all.

use super::{DyadicGrid, Path, ProcessSpec};
use crate::error::{check, Error, Result};
use crate::sampling::{sample_m_wright, sample_positive_stable, RngStream, StableParams};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeChangeConfig {
    /// Minimum operational level: `delta <= 2^-operational_level`.
    pub operational_level: u32,
    /// For a level-`m` evaluation grid the operational level is at least `m + refine_levels`.
    pub refine_levels: u32,
    /// Cap on operational steps; exceeding it is [`Error::ExtensionBudget`].
    pub max_steps: usize,
}

impl Default for TimeChangeConfig {
    fn default() -> Self {
        Self {
            operational_level: 12,
            refine_levels: 4,
            max_steps: 1 << 28,
        }
    }
}

impl TimeChangeConfig {
    pub fn validate(&self) -> Result<()> {
        check(
            (1..=40).contains(&self.operational_level),
            "operational_level",
            self.operational_level as f64,
            "must lie in 1..=40",
        )?;
        check(self.max_steps >= 1, "max_steps", self.max_steps as f64, "must be >= 1")
    }

    /// Operational level used for an evaluation grid of level `m`.
    pub fn level_for_grid(&self, m: u32) -> u32 {
        self.operational_level.max(m + self.refine_levels)
    }
}

/// Clock values `U(t_i)` at the requested times.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeChangePath {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    /// Operational step, or `None` for an exact single-time draw.
    pub operational_step: Option<f64>,
}

impl TimeChangePath {
    pub fn value_at(&self, t: f64) -> Option<f64> {
        self.times
            .iter()
            .position(|&s| (s - t).abs() < 1e-12)
            .map(|i| self.values[i])
    }
}

fn check_orders(beta: f64, alpha: f64) -> Result<()> {
    check(beta > 0.0 && beta < 1.0, "beta", beta, "must lie in (0, 1)")?;
    check(alpha > 0.0 && alpha < 2.0, "alpha", alpha, "must lie in (0, 2)")
}

/// Exact draw of `U(t)`.
pub fn time_change_marginal(beta: f64, alpha: f64, t: f64, rng: &mut RngStream) -> Result<f64> {
    check_orders(beta, alpha)?;
    check(t >= 0.0 && t.is_finite(), "t", t, "must be finite and >= 0")?;
    let y = sample_m_wright(&StableParams::new(beta)?, rng);
    Ok(t.powf(alpha) * y)
}

/// `U` at nondecreasing `eval_times` in `[0, inf)`.
pub fn sample_time_change(
    beta: f64,
    alpha: f64,
    eval_times: &[f64],
    cfg: &TimeChangeConfig,
    rng: &mut RngStream,
) -> Result<TimeChangePath> {
    sample_at_level(beta, alpha, eval_times, cfg.operational_level, cfg, rng)
}

fn sample_at_level(
    beta: f64,
    alpha: f64,
    eval_times: &[f64],
    level: u32,
    cfg: &TimeChangeConfig,
    rng: &mut RngStream,
) -> Result<TimeChangePath> {
    check_orders(beta, alpha)?;
    cfg.validate()?;
    for w in eval_times.windows(2) {
        if w[1] < w[0] {
            return Err(Error::InvalidParameter {
                name: "eval_times",
                value: w[1],
                constraint: "must be nondecreasing",
            });
        }
    }
    if let Some(&t) = eval_times.first() {
        check(t >= 0.0, "eval_times", t, "must be >= 0")?;
    }
    if let Some(&t) = eval_times.last() {
        check(t.is_finite(), "eval_times", t, "must be finite")?;
    }
    let params = StableParams::new(beta)?;
    let positive: Vec<f64> = eval_times.iter().copied().filter(|&t| t > 0.0).collect();
    if positive.is_empty() || positive.iter().all(|&t| t == positive[0]) {
        let u = if positive.is_empty() {
            0.0
        } else {
            positive[0].powf(alpha) * sample_m_wright(&params, rng)
        };
        let values = eval_times.iter().map(|&t| if t > 0.0 { u } else { 0.0 }).collect();
        return Ok(TimeChangePath {
            times: eval_times.to_vec(),
            values,
            operational_step: None,
        });
    }

    let delta = (-(level as f64)).exp2();
    let jump_scale = delta.powf(1.0 / beta);
    let exponent = alpha / beta;
    let mut s = 0.0;
    let mut steps = 0usize;
    let mut values = Vec::with_capacity(eval_times.len());
    for &t in eval_times {
        if t == 0.0 {
            values.push(0.0);
            continue;
        }
        let target = t.powf(exponent);
        while s <= target {
            if steps >= cfg.max_steps {
                return Err(Error::ExtensionBudget {
                    cap: cfg.max_steps,
                    level: target,
                });
            }
            s += jump_scale * sample_positive_stable(&params, rng);
            steps += 1;
        }
        values.push(steps as f64 * delta);
    }
    Ok(TimeChangePath {
        times: eval_times.to_vec(),
        values,
        operational_step: Some(delta),
    })
}

/// `U` at the points of `grid`, on the operational level
/// [`TimeChangeConfig::level_for_grid`].
pub fn sample_clock_for_grid(
    beta: f64,
    alpha: f64,
    grid: DyadicGrid,
    cfg: &TimeChangeConfig,
    rng: &mut RngStream,
) -> Result<TimeChangePath> {
    let level = cfg.level_for_grid(grid.level());
    sample_at_level(beta, alpha, &grid.times(), level, cfg, rng)
}

/// TCBM on `grid` together with the clock it was built from.
///
/// The clock is drawn first; then `W(U(t_i)) - W(U(t_{i-1})) = sqrt(dU) Z_i`.
/// Equal consecutive clock values give exactly zero increments.
pub fn sample_tcbm_with_clock(
    beta: f64,
    alpha: f64,
    grid: DyadicGrid,
    cfg: &TimeChangeConfig,
    rng: &mut RngStream,
) -> Result<(Path, TimeChangePath)> {
    let clock = sample_clock_for_grid(beta, alpha, grid, cfg, rng)?;
    let mut values = Vec::with_capacity(grid.len());
    values.push(0.0);
    let mut acc = 0.0;
    for w in clock.values.windows(2) {
        let du = w[1] - w[0];
        if du > 0.0 {
            acc += du.sqrt() * rng.standard_normal();
        }
        values.push(acc);
    }
    let path = Path::new(grid, values, Some(ProcessSpec::Tcbm { beta, alpha }))?;
    Ok((path, clock))
}

pub fn sample_tcbm(
    beta: f64,
    alpha: f64,
    grid: DyadicGrid,
    cfg: &TimeChangeConfig,
    rng: &mut RngStream,
) -> Result<Path> {
    Ok(sample_tcbm_with_clock(beta, alpha, grid, cfg, rng)?.0)
}
