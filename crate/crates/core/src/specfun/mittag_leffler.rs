//! One-parameter Mittag-Leffler function `E_b(x) = sum x^n / Gamma(b n + 1)`.
//!
//! On the negative axis the alternating series is used while its cancellation
//! error stays inside the tolerance; beyond that the spectral representation
//!
//! ```text
//! E_b(-x) = sin(b pi) / (b pi) * int_0^inf exp(-x^{1/b} u^{1/b}) / (u^2 + 2u cos(b pi) + 1) du
//! ```
//!
//! is integrated numerically. It follows from the Laplace-transform form of
//! `E_b(-t^b)` after the substitution `r = u^{1/b}`, which removes the
//! `r^{b-1}` endpoint singularity.

use std::f64::consts::PI;

use super::{gamma, ln_gamma, CompensatedSum, EvalConfig};
use crate::error::{check, Error, Result};
use crate::quad;

const MAX_ARGUMENT: f64 = 10.0;
/// Largest `|x|^{1/b}` for which the alternating series is even attempted.
const SERIES_SCALE_LIMIT: f64 = 12.0;

/// `E_beta(x)` with the default [`EvalConfig`].
pub fn mittag_leffler(beta: f64, x: f64) -> Result<f64> {
    mittag_leffler_with(beta, x, &EvalConfig::default())
}

pub fn mittag_leffler_with(beta: f64, x: f64, cfg: &EvalConfig) -> Result<f64> {
    check(beta > 0.0 && beta <= 1.0, "beta", beta, "must lie in (0, 1]")?;
    check(x.is_finite() && x <= MAX_ARGUMENT, "x", x, "must be finite and <= 10")?;
    cfg.validate()?;
    if x == 0.0 {
        return Ok(1.0);
    }
    if beta == 1.0 {
        return Ok(x.exp());
    }
    if x > 0.0 {
        return positive_series(beta, x, cfg);
    }
    let scale = (-x).powf(1.0 / beta);
    if scale <= SERIES_SCALE_LIMIT {
        let (value, estimate) = alternating_series(beta, x, cfg)?;
        if estimate <= 0.25 * cfg.series_tolerance {
            return Ok(value);
        }
    }
    spectral_integral(beta, -x, cfg)
}

/// Term `x^n / Gamma(b n + 1)` computed directly while Gamma is representable.
fn series_term(beta: f64, x: f64, n: usize, power: f64) -> Result<f64> {
    let arg = beta * n as f64 + 1.0;
    if arg < 170.0 {
        Ok(power / gamma(arg)?)
    } else {
        let sign = if x < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
        Ok(sign * (n as f64 * x.abs().ln() - ln_gamma(arg)?).exp())
    }
}

fn positive_series(beta: f64, x: f64, cfg: &EvalConfig) -> Result<f64> {
    let peak = x.powf(1.0 / beta);
    let mut sum = CompensatedSum::default();
    let mut power = 1.0;
    for n in 0..cfg.max_terms {
        let term = series_term(beta, x, n, power)?;
        sum.add(term);
        let total = sum.value();
        if !total.is_finite() {
            break;
        }
        if beta * n as f64 > peak && term <= 0.01 * cfg.series_tolerance * total.max(1.0) {
            return Ok(total);
        }
        power *= x;
    }
    Err(Error::NonConvergence {
        x,
        max_terms: cfg.max_terms,
    })
}

/// Returns the series value and its cancellation error estimate.
fn alternating_series(beta: f64, x: f64, cfg: &EvalConfig) -> Result<(f64, f64)> {
    let peak = x.abs().powf(1.0 / beta);
    let mut sum = CompensatedSum::default();
    let mut power = 1.0;
    for n in 0..cfg.max_terms {
        let term = series_term(beta, x, n, power)?;
        sum.add(term);
        if beta * n as f64 > peak && term.abs() <= 0.01 * cfg.series_tolerance {
            return Ok((sum.value(), sum.cancellation_estimate()));
        }
        power *= x;
    }
    Err(Error::NonConvergence {
        x,
        max_terms: cfg.max_terms,
    })
}

/// `E_b(-x)` for `x > 0`, `0 < b < 1`, from the spectral integral.
fn spectral_integral(beta: f64, x: f64, cfg: &EvalConfig) -> Result<f64> {
    let t = x.powf(1.0 / beta);
    let phi = beta * PI;
    let (sin_phi, cos_phi) = phi.sin_cos();
    let prefactor = sin_phi / phi;
    let inv_beta = 1.0 / beta;
    let integrand = |u: f64| {
        let decay = (-t * u.powf(inv_beta)).exp();
        if decay == 0.0 {
            0.0
        } else {
            decay / (u * u + 2.0 * u * cos_phi + 1.0)
        }
    };
    // beyond u_max the exponential factor is below e^-60
    let u_max = (60.0 / t).powf(beta);
    let qcfg = cfg.quad(0.1 * cfg.series_tolerance / prefactor);
    let value = if u_max > 1.0 {
        quad::integrate(integrand, 0.0, 1.0, &qcfg)?.0
            + quad::integrate(integrand, 1.0, u_max, &qcfg)?.0
    } else {
        quad::integrate(integrand, 0.0, u_max, &qcfg)?.0
    };
    Ok(prefactor * value)
}

/// `n`-th derivative of `E_beta` at `x <= 0`, default [`EvalConfig`].
pub fn mittag_leffler_deriv(beta: f64, x: f64, n: u32) -> Result<f64> {
    mittag_leffler_deriv_with(beta, x, n, &EvalConfig::default())
}

/// Term-wise differentiated series `sum_{k>=n} k!/(k-n)! x^{k-n} / Gamma(b k + 1)`.
pub fn mittag_leffler_deriv_with(beta: f64, x: f64, n: u32, cfg: &EvalConfig) -> Result<f64> {
    if n == 0 {
        return mittag_leffler_with(beta, x, cfg);
    }
    check(beta > 0.0 && beta <= 1.0, "beta", beta, "must lie in (0, 1]")?;
    check(x.is_finite() && x <= 0.0, "x", x, "must be finite and <= 0")?;
    check(n <= 20, "n", n as f64, "derivative order must be <= 20")?;
    cfg.validate()?;
    if beta == 1.0 {
        return Ok(x.exp());
    }
    let n = n as usize;
    let nf = n as f64;
    if x == 0.0 {
        return Ok((ln_gamma(nf + 1.0)? - ln_gamma(beta * nf + 1.0)?).exp());
    }
    let ln_abs_x = x.abs().ln();
    let peak = x.abs().powf(1.0 / beta) + nf;
    let mut sum = CompensatedSum::default();
    let mut prev_ln = f64::INFINITY;
    for k in n..n + cfg.max_terms {
        let kf = k as f64;
        let j = k - n;
        let ln_mag = ln_gamma(kf + 1.0)? - ln_gamma(j as f64 + 1.0)? + j as f64 * ln_abs_x
            - ln_gamma(beta * kf + 1.0)?;
        let sign = if j % 2 == 1 { -1.0 } else { 1.0 };
        let term = sign * ln_mag.exp();
        sum.add(term);
        if beta * kf > peak && ln_mag < prev_ln && term.abs() <= 0.01 * cfg.series_tolerance {
            let estimate = sum.cancellation_estimate();
            if estimate > cfg.series_tolerance {
                return Err(Error::Range {
                    x,
                    estimate,
                    tolerance: cfg.series_tolerance,
                });
            }
            return Ok(sum.value());
        }
        prev_ln = ln_mag;
    }
    Err(Error::NonConvergence {
        x,
        max_terms: cfg.max_terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_argument() {
        assert_eq!(mittag_leffler(0.7, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn order_one_is_exponential() {
        assert!((mittag_leffler(1.0, -1.0).unwrap() - (-1.0f64).exp()).abs() < 1e-15);
        let mut x = -30.0;
        while x <= 2.0 {
            let e = mittag_leffler(1.0, x).unwrap();
            assert!((e - x.exp()).abs() <= 1e-12, "x = {x}");
            x += 0.25;
        }
    }

    #[test]
    fn half_order_closed_form() {
        // E_{1/2}(-1) = e erfc(1)
        let v = mittag_leffler(0.5, -1.0).unwrap();
        assert!((v - 0.427_583_576_155_807_0).abs() < 1e-12, "{v}");
    }

    #[test]
    fn series_and_integral_agree_in_overlap() {
        let cfg = EvalConfig::default();
        for beta in [0.4, 0.6, 0.8, 0.95] {
            for x in [1.5, 2.5, 3.5] {
                let (series, est) = alternating_series(beta, -x, &cfg).unwrap();
                if est > 1e-13 {
                    continue;
                }
                let integral = spectral_integral(beta, x, &cfg).unwrap();
                assert!(
                    (series - integral).abs() < 1e-11,
                    "beta {beta} x {x}: {series} vs {integral}"
                );
            }
        }
    }

    #[test]
    fn negative_axis_is_positive_and_decreasing() {
        for beta in [0.3, 0.5, 0.9] {
            let mut prev = 1.0;
            let mut x = 0.01;
            while x <= 50.0 {
                let v = mittag_leffler(beta, -x).unwrap();
                assert!(v > 0.0 && v < prev, "beta {beta} x {x}: {v} !< {prev}");
                prev = v;
                x += 0.01;
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(mittag_leffler(0.0, -1.0).is_err());
        assert!(mittag_leffler(1.5, -1.0).is_err());
        assert!(mittag_leffler(0.5, 11.0).is_err());
        assert!(mittag_leffler_deriv(0.5, 0.5, 1).is_err());
        assert!(mittag_leffler_deriv(0.5, -0.5, 21).is_err());
    }

    #[test]
    fn positive_overflow_is_nonconvergence() {
        assert!(matches!(
            mittag_leffler(0.1, 10.0),
            Err(Error::NonConvergence { .. })
        ));
    }

    #[test]
    fn derivative_order_zero_is_the_function() {
        let a = mittag_leffler_deriv(0.6, -0.5, 0).unwrap();
        let b = mittag_leffler(0.6, -0.5).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn derivative_of_exponential() {
        let v = mittag_leffler_deriv(1.0, -1.0, 3).unwrap();
        assert!((v - (-1.0f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn derivative_matches_finite_difference() {
        for beta in [0.5, 0.75] {
            for x in [-0.3, -1.2] {
                let h = 1e-4;
                let fd = (mittag_leffler(beta, x + h).unwrap() - mittag_leffler(beta, x - h).unwrap())
                    / (2.0 * h);
                let d = mittag_leffler_deriv(beta, x, 1).unwrap();
                assert!((fd - d).abs() < 1e-7, "beta {beta} x {x}: {fd} vs {d}");
            }
        }
    }
}
