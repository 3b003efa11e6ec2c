//! Fractional Poisson process (renewal with Mittag-Leffler waiting times) and
//! the fractal-time Poisson process `N(U_beta(t))`.

use super::timechange::{sample_time_change, TimeChangeConfig};
use crate::error::{check, Error, Result};
use crate::sampling::{sample_ml_waiting_time, RngStream, StableParams};
use crate::specfun::{ln_gamma, mittag_leffler_with, CompensatedSum, EvalConfig};

fn check_params(beta: f64, lambda: f64) -> Result<()> {
    check(beta > 0.0 && beta <= 1.0, "beta", beta, "must lie in (0, 1]")?;
    check(lambda > 0.0 && lambda.is_finite(), "lambda", lambda, "must be finite and > 0")
}

/// Event times in `(0, horizon]` of the renewal process with
/// `P(T > t) = E_beta(-lambda t^beta)` waiting times.
pub fn sample_fpp(beta: f64, lambda: f64, horizon: f64, rng: &mut RngStream) -> Result<Vec<f64>> {
    check_params(beta, lambda)?;
    check(horizon >= 0.0 && horizon.is_finite(), "horizon", horizon, "must be finite and >= 0")?;
    let params = StableParams::new(beta)?;
    let mut events = Vec::new();
    let mut t = 0.0;
    loop {
        t += sample_ml_waiting_time(&params, lambda, rng);
        if t > horizon {
            return Ok(events);
        }
        events.push(t);
    }
}

/// Number of events at or before `t` in a sorted event list.
pub fn count_at(events: &[f64], t: f64) -> u64 {
    events.partition_point(|&e| e <= t) as u64
}

/// Counts `N(U_beta(t))` at nondecreasing `probe_times`, where `N` is a
/// rate-`lambda` Poisson process and `U_beta` the inverse `beta`-stable clock.
pub fn sample_ftpp(
    beta: f64,
    lambda: f64,
    probe_times: &[f64],
    cfg: &TimeChangeConfig,
    rng: &mut RngStream,
) -> Result<Vec<u64>> {
    check_params(beta, lambda)?;
    let clock = if beta == 1.0 {
        for w in probe_times.windows(2) {
            check(w[0] <= w[1], "probe_times", w[1], "must be nondecreasing")?;
        }
        probe_times.to_vec()
    } else {
        sample_time_change(beta, beta, probe_times, cfg, rng)?.values
    };
    let mut counts = Vec::with_capacity(clock.len());
    let mut next_event = rng.exponential() / lambda;
    let mut n = 0u64;
    for u in clock {
        while next_event <= u {
            n += 1;
            next_event += rng.exponential() / lambda;
        }
        counts.push(n);
    }
    Ok(counts)
}

/// `p_n(t) = (lambda t^beta)^n / n! * E_beta^{(n)}(-lambda t^beta)`.
pub fn fpp_pmf(n: u32, t: f64, beta: f64, lambda: f64) -> Result<f64> {
    fpp_pmf_with(n, t, beta, lambda, &EvalConfig::default())
}

/// Sums `p_n(t) = sum_{j>=0} (-1)^j C(n+j, n) x^{n+j} / Gamma(beta (n+j) + 1)`,
/// `x = lambda t^beta`, which is the differentiated Mittag-Leffler series with
/// the `x^n / n!` factor folded into each term. Cancellation is therefore
/// measured on the probability scale.
pub fn fpp_pmf_with(n: u32, t: f64, beta: f64, lambda: f64, cfg: &EvalConfig) -> Result<f64> {
    check_params(beta, lambda)?;
    check(t > 0.0 && t.is_finite(), "t", t, "must be finite and > 0")?;
    check(n <= 20, "n", n as f64, "count must be <= 20")?;
    cfg.validate()?;
    let x = lambda * t.powf(beta);
    if beta == 1.0 {
        let nf = n as f64;
        return Ok((nf * x.ln() - x - ln_gamma(nf + 1.0)?).exp());
    }
    let nf = n as f64;
    let ln_x = x.ln();
    let peak = x.powf(1.0 / beta) + nf;
    let mut sum = CompensatedSum::default();
    let mut prev_ln = f64::INFINITY;
    for j in 0..cfg.max_terms {
        let k = nf + j as f64;
        let ln_mag = ln_gamma(k + 1.0)? - ln_gamma(nf + 1.0)? - ln_gamma(j as f64 + 1.0)?
            + k * ln_x
            - ln_gamma(beta * k + 1.0)?;
        let term = if j % 2 == 1 { -ln_mag.exp() } else { ln_mag.exp() };
        sum.add(term);
        if beta * k > peak && ln_mag < prev_ln && term.abs() <= 0.01 * cfg.series_tolerance {
            let estimate = sum.cancellation_estimate();
            if estimate > cfg.series_tolerance {
                return Err(Error::Range {
                    x: -x,
                    estimate,
                    tolerance: cfg.series_tolerance,
                });
            }
            return Ok(sum.value().clamp(0.0, 1.0));
        }
        prev_ln = ln_mag;
    }
    Err(Error::NonConvergence {
        x: -x,
        max_terms: cfg.max_terms,
    })
}

/// Probability generating function `E[z^{N(t)}] = E_beta(lambda t^beta (z - 1))`.
pub fn fpp_pgf(z: f64, t: f64, beta: f64, lambda: f64) -> Result<f64> {
    check_params(beta, lambda)?;
    check((0.0..=1.0).contains(&z), "z", z, "must lie in [0, 1]")?;
    check(t >= 0.0 && t.is_finite(), "t", t, "must be finite and >= 0")?;
    mittag_leffler_with(beta, lambda * t.powf(beta) * (z - 1.0), &EvalConfig::default())
}
