//! M-Wright density `M_b(x) = sum (-x)^n / (n! Gamma(1 - b - b n))` and its moments.

use std::f64::consts::PI;

use super::{gamma, ln_gamma, rgamma_sign_ln, sin_pi, CompensatedSum, EvalConfig};
use crate::error::{check, Error, Result};
use crate::quad;
use crate::sampling::StableParams;

/// `M_beta(x)` with the default [`EvalConfig`].
pub fn m_wright_density(beta: f64, x: f64) -> Result<f64> {
    m_wright_density_with(beta, x, &EvalConfig::default())
}

/// `1/Gamma(z)` computed directly (not through logarithms) while representable.
fn rgamma_direct(z: f64) -> Result<f64> {
    let (sign, ln) = rgamma_sign_ln(z);
    if sign == 0.0 {
        return Ok(0.0);
    }
    if z >= 0.5 && z < 170.0 {
        return Ok(1.0 / gamma(z)?);
    }
    if z < 0.5 && 1.0 - z < 170.0 {
        return Ok(sin_pi(z) * gamma(1.0 - z)? / PI);
    }
    Ok(sign * ln.exp())
}

/// Upper bound for `ln |1/Gamma(z)|` that ignores the `sin` factor.
fn rgamma_envelope_ln(z: f64) -> Result<f64> {
    if z >= 0.5 {
        Ok(-ln_gamma(z)?)
    } else {
        Ok(ln_gamma(1.0 - z)? - PI.ln())
    }
}

/// Series evaluation in compensated summation. Returns [`Error::Range`] when the
/// alternating-series cancellation error would exceed `cfg.series_tolerance`.
pub fn m_wright_density_with(beta: f64, x: f64, cfg: &EvalConfig) -> Result<f64> {
    check(beta > 0.0 && beta < 1.0, "beta", beta, "must lie in (0, 1)")?;
    check(x.is_finite() && x >= 0.0, "x", x, "must be finite and >= 0")?;
    cfg.validate()?;
    if x == 0.0 {
        return rgamma_direct(1.0 - beta);
    }
    let ln_x = x.ln();
    let mut sum = CompensatedSum::default();
    // (-x)^n / n!, advanced multiplicatively
    let mut coef: f64 = 1.0;
    let mut prev_envelope = f64::INFINITY;
    for n in 0..cfg.max_terms {
        let nf = n as f64;
        let z = 1.0 - beta - beta * nf;
        let direct_ok = z >= 0.5 || 1.0 - z < 170.0;
        let term = if direct_ok && coef.is_finite() && coef != 0.0 {
            coef * rgamma_direct(z)?
        } else {
            let (sign, ln_rg) = rgamma_sign_ln(z);
            let parity = if n % 2 == 1 { -1.0 } else { 1.0 };
            parity * sign * (nf * ln_x - ln_gamma(nf + 1.0)? + ln_rg).exp()
        };
        sum.add(term);
        let envelope = nf * ln_x - ln_gamma(nf + 1.0)? + rgamma_envelope_ln(z)?;
        if n > 0 && envelope < prev_envelope && envelope.exp() <= 0.01 * cfg.series_tolerance {
            let estimate = sum.cancellation_estimate();
            if estimate > cfg.series_tolerance {
                return Err(Error::Range {
                    x,
                    estimate,
                    tolerance: cfg.series_tolerance,
                });
            }
            return Ok(sum.value().max(0.0));
        }
        prev_envelope = envelope;
        coef *= -x / (nf + 1.0);
    }
    Err(Error::NonConvergence {
        x,
        max_terms: cfg.max_terms,
    })
}

/// `M_beta(x)` from the integral representation
///
/// ```text
/// M_b(x) = x^{b/(1-b)} / (1-b) * int_0^1 A(u) exp(-A(u) x^{1/(1-b)}) du
/// ```
///
/// with Kanter's function `A`. Every integrand value is positive, so there is
/// no cancellation and the result is accurate for large `x` where the series
/// breaks down. Near the origin the series is the better choice.
pub fn m_wright_density_integral(beta: f64, x: f64, cfg: &EvalConfig) -> Result<f64> {
    check(beta > 0.0 && beta < 1.0, "beta", beta, "must lie in (0, 1)")?;
    check(x.is_finite() && x > 0.0, "x", x, "must be finite and > 0")?;
    cfg.validate()?;
    let params = StableParams::new(beta)?;
    let k = 1.0 / (1.0 - beta);
    let ln_x = x.ln();
    let scale = (k * ln_x).exp();
    let integrand = |u: f64| {
        if u <= 0.0 || u >= 1.0 {
            return 0.0;
        }
        let ln_a = params.ln_kanter(u);
        (ln_a - ln_a.exp() * scale).exp()
    };
    let mut qcfg = cfg.quad(0.0);
    qcfg.rel_tol = cfg.series_tolerance.max(1e-14);
    qcfg.abs_tol = f64::MIN_POSITIVE;
    let (integral, _) = quad::integrate(integrand, 0.0, 1.0, &qcfg)?;
    Ok(k * (beta * k * ln_x).exp() * integral)
}

/// Series where it is accurate, integral representation otherwise.
pub(crate) fn m_wright_density_robust(beta: f64, x: f64, cfg: &EvalConfig) -> Result<f64> {
    match m_wright_density_with(beta, x, cfg) {
        Err(Error::Range { .. }) | Err(Error::NonConvergence { .. }) => {
            m_wright_density_integral(beta, x, cfg)
        }
        other => other,
    }
}

/// Two-variable form `t^{-beta} M_beta(t^{-beta} tau)`: the density of the
/// inverse stable subordinator at time `t`.
pub fn m_wright_two_var(beta: f64, tau: f64, t: f64) -> Result<f64> {
    m_wright_two_var_with(beta, tau, t, &EvalConfig::default())
}

pub fn m_wright_two_var_with(beta: f64, tau: f64, t: f64, cfg: &EvalConfig) -> Result<f64> {
    check(t > 0.0 && t.is_finite(), "t", t, "must be finite and > 0")?;
    check(tau >= 0.0, "tau", tau, "must be >= 0")?;
    let scale = t.powf(-beta);
    Ok(scale * m_wright_density_with(beta, scale * tau, cfg)?)
}

/// `int_0^inf tau^delta M_beta(tau) dtau = Gamma(delta + 1) / Gamma(beta delta + 1)`.
pub fn m_wright_moment(beta: f64, delta: f64) -> Result<f64> {
    check(beta > 0.0 && beta <= 1.0, "beta", beta, "must lie in (0, 1]")?;
    check(delta > -1.0, "delta", delta, "must be > -1")?;
    Ok((ln_gamma(delta + 1.0)? - ln_gamma(beta * delta + 1.0)?).exp())
}

/// `E|Z|^q` for a standard Gaussian `Z`: `2^{q/2} Gamma((q+1)/2) / sqrt(pi)`.
pub fn gaussian_abs_moment(q: f64) -> Result<f64> {
    check(q > -1.0, "q", q, "must be > -1")?;
    Ok((0.5 * q * 2f64.ln() + ln_gamma(0.5 * (q + 1.0))? - 0.5 * PI.ln()).exp())
}

/// Limit of the `2/alpha`-variation dyadic sums of ggBm, `E|B_{beta,alpha}(1)|^{2/alpha}`.
///
/// With `B(1) = sqrt(Y) Z`, `Y ~ M_beta` independent of `Z ~ N(0,1)`, this is
/// `E[Y^{1/alpha}] E|Z|^{2/alpha}`.
pub fn mu_beta_alpha(beta: f64, alpha: f64) -> Result<f64> {
    check(beta > 0.0 && beta <= 1.0, "beta", beta, "must lie in (0, 1]")?;
    check(alpha > 0.0 && alpha < 2.0, "alpha", alpha, "must lie in (0, 2)")?;
    Ok(m_wright_moment(beta, 1.0 / alpha)? * gaussian_abs_moment(2.0 / alpha)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_at_origin() {
        let v = m_wright_density(0.5, 0.0).unwrap();
        assert!((v - 1.0 / PI.sqrt()).abs() < 1e-15);
        let v = m_wright_density(0.3, 0.0).unwrap();
        assert!((v - 1.0 / gamma(0.7).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn half_order_is_half_gaussian() {
        let cfg = EvalConfig::default().with_tolerance(1e-9);
        let mut x = 0.0;
        while x <= 8.0 {
            let got = m_wright_density_with(0.5, x, &cfg).unwrap();
            let want = (-x * x / 4.0).exp() / PI.sqrt();
            assert!((got - want).abs() < 1e-9, "x {x}: {got} vs {want}");
            x += 0.05;
        }
        let v = m_wright_density(0.5, 2.0).unwrap();
        assert!((v - (-1.0f64).exp() / PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn large_argument_is_range_error() {
        assert!(matches!(
            m_wright_density(0.7, 8.0),
            Err(Error::Range { .. })
        ));
    }

    #[test]
    fn two_variable_form() {
        let v = m_wright_two_var(0.5, 0.0, 1.0).unwrap();
        assert!((v - 1.0 / PI.sqrt()).abs() < 1e-15);
        let v = m_wright_two_var(0.5, 1.0, 4.0).unwrap();
        let want = 0.5 * (-0.25f64 * 0.25).exp() / PI.sqrt();
        assert!((v - want).abs() < 1e-13);
        assert_eq!(
            m_wright_two_var(0.7, 0.3, 1.0).unwrap(),
            m_wright_density(0.7, 0.3).unwrap()
        );
    }

    #[test]
    fn moments() {
        assert!((m_wright_moment(0.5, 0.0).unwrap() - 1.0).abs() < 1e-15);
        let m1 = m_wright_moment(0.5, 1.0).unwrap();
        assert!((m1 - 2.0 / PI.sqrt()).abs() < 1e-14);
        let m2 = m_wright_moment(0.8, 2.0).unwrap();
        assert!((m2 - 2.0 / gamma(2.6).unwrap()).abs() < 1e-14);
        assert!(m_wright_moment(0.5, -1.0).is_err());
    }

    #[test]
    fn mu_special_cases() {
        assert!((mu_beta_alpha(1.0, 1.0).unwrap() - 1.0).abs() < 1e-14);
        assert!(mu_beta_alpha(1.0, 2.0).is_err());
        assert!((gaussian_abs_moment(1.0).unwrap() - (2.0 / PI).sqrt()).abs() < 1e-15);
        assert!((gaussian_abs_moment(4.0).unwrap() - 3.0).abs() < 1e-14);
    }
    #[test]
    fn integral_form_matches_series_and_half_gaussian() {
        let cfg = EvalConfig::default();
        for beta in [0.3, 0.5, 0.7, 0.9] {
            for x in [0.2, 0.8, 1.5] {
                let series = m_wright_density_with(beta, x, &cfg).map_err(|e| format!("{beta} {e:?}")).unwrap();
                let integral = m_wright_density_integral(beta, x, &cfg).unwrap();
                assert!(
                    (series - integral).abs() < 1e-11 * series.max(1.0),
                    "beta {beta} x {x}: {series} vs {integral}"
                );
            }
        }
        for x in [8.0, 12.0, 20.0] {
            let got = m_wright_density_integral(0.5, x, &cfg).unwrap();
            let want = (-x * x / 4.0).exp() / PI.sqrt();
            assert!(((got - want) / want).abs() < 1e-9, "x {x}: {got} vs {want}");
        }
        let v = m_wright_density_robust(0.7, 8.0, &cfg).unwrap();
        assert!(v > 0.0 && v < 1e-3);
    }
}
