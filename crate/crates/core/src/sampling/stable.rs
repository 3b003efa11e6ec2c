//! Positive stable laws through Kanter's representation.
//!
//! For `0 < b < 1`, `S = (A(u) / E)^{(1-b)/b}` with `u ~ U(0,1)`, `E ~ Exp(1)` and
//!
//! ```text
//! A(u) = sin((1-b) pi u) sin(b pi u)^{b/(1-b)} / sin(pi u)^{1/(1-b)}
//! ```
//!
//! has Laplace transform `E[exp(-s S)] = exp(-s^b)`. The same two variates give
//! the inverse-subordinator marginal `U_b(1) = S^{-b} = (E / A(u))^{1-b}` and
//! Mittag-Leffler waiting times `E'^{1/b} S`.

use std::f64::consts::PI;

use super::RngStream;
use crate::error::{check, Result};

/// Stability index of a one-sided stable law with `E[exp(-s S)] = exp(-s^beta)`.
///
/// `beta = 1` is accepted as the degenerate law `S = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StableParams {
    beta: f64,
    one_minus: f64,
    // exponents of the Kanter function in log form
    k_mid: f64,
    k_den: f64,
}

impl StableParams {
    pub fn new(beta: f64) -> Result<Self> {
        check(beta > 0.0 && beta <= 1.0, "beta", beta, "must lie in (0, 1]")?;
        let one_minus = 1.0 - beta;
        let (k_mid, k_den) = if beta < 1.0 {
            (beta / one_minus, 1.0 / one_minus)
        } else {
            (0.0, 0.0)
        };
        Ok(Self {
            beta,
            one_minus,
            k_mid,
            k_den,
        })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn is_degenerate(&self) -> bool {
        self.beta == 1.0
    }

    /// `ln A(u)` for `u` in `(0, 1)`.
    #[inline]
    pub(crate) fn ln_kanter(&self, u: f64) -> f64 {
        let a = (self.one_minus * PI * u).sin().ln();
        let b = (self.beta * PI * u).sin().ln();
        let c = (PI * u).sin().ln();
        a + self.k_mid * b - self.k_den * c
    }

    /// `ln(A(u) / E)` from two fresh variates.
    #[inline]
    fn ln_ratio(&self, rng: &mut RngStream) -> f64 {
        let u = rng.uniform_open();
        let e = rng.exponential();
        self.ln_kanter(u) - e.ln()
    }
}

/// One draw of `S` with `E[exp(-theta S)] = exp(-theta^beta)`.
#[inline]
pub fn sample_positive_stable(params: &StableParams, rng: &mut RngStream) -> f64 {
    if params.is_degenerate() {
        return 1.0;
    }
    (params.one_minus / params.beta * params.ln_ratio(rng)).exp()
}

/// Subordinator increment over a step `dt`: `dt^{1/beta} S`.
#[inline]
pub fn stable_increment(params: &StableParams, dt: f64, rng: &mut RngStream) -> f64 {
    dt.powf(1.0 / params.beta) * sample_positive_stable(params, rng)
}

/// One draw from the M-Wright law (density `M_beta`), i.e. `U_beta(1)`.
#[inline]
pub fn sample_m_wright(params: &StableParams, rng: &mut RngStream) -> f64 {
    if params.is_degenerate() {
        return 1.0;
    }
    // S^{-beta} = (A/E)^{-(1-beta)}
    (-params.one_minus * params.ln_ratio(rng)).exp()
}

/// Mittag-Leffler waiting time with `P(J > t) = E_beta(-lambda t^beta)`.
pub fn sample_ml_waiting_time(params: &StableParams, lambda: f64, rng: &mut RngStream) -> f64 {
    debug_assert!(lambda > 0.0);
    let e = rng.exponential();
    if params.is_degenerate() {
        return e / lambda;
    }
    let s = sample_positive_stable(params, rng);
    (e / lambda).powf(1.0 / params.beta) * s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::derive_stream;
    use crate::specfun::{m_wright_moment, mittag_leffler};

    fn mean_se(xs: &[f64]) -> (f64, f64) {
        let n = xs.len() as f64;
        let m = xs.iter().sum::<f64>() / n;
        let v = xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (n - 1.0);
        (m, (v / n).sqrt())
    }

    #[test]
    fn rejects_bad_beta() {
        assert!(StableParams::new(0.0).is_err());
        assert!(StableParams::new(1.01).is_err());
    }

    #[test]
    fn degenerate_order() {
        let p = StableParams::new(1.0).unwrap();
        let mut rng = derive_stream(1, 0);
        assert_eq!(sample_positive_stable(&p, &mut rng), 1.0);
        assert_eq!(sample_m_wright(&p, &mut rng), 1.0);
    }

    #[test]
    fn stable_laplace_transform() {
        let p = StableParams::new(0.5).unwrap();
        let mut rng = derive_stream(11, 0);
        let xs: Vec<f64> = (0..200_000)
            .map(|_| (-sample_positive_stable(&p, &mut rng)).exp())
            .collect();
        let (m, se) = mean_se(&xs);
        assert!((m - (-1.0f64).exp()).abs() < 3.0 * se, "{m} ± {se}");
    }

    #[test]
    fn m_wright_first_moment() {
        let p = StableParams::new(0.5).unwrap();
        let mut rng = derive_stream(12, 0);
        let xs: Vec<f64> = (0..200_000).map(|_| sample_m_wright(&p, &mut rng)).collect();
        let (m, se) = mean_se(&xs);
        let want = m_wright_moment(0.5, 1.0).unwrap();
        assert!((m - want).abs() < 3.0 * se, "{m} ± {se} vs {want}");
    }

    #[test]
    fn waiting_time_survival() {
        let p = StableParams::new(0.6).unwrap();
        let mut rng = derive_stream(13, 0);
        let xs: Vec<f64> = (0..200_000)
            .map(|_| {
                if sample_ml_waiting_time(&p, 1.0, &mut rng) > 1.0 {
                    1.0
                } else {
                    0.0
                }
            })
            .collect();
        let (m, se) = mean_se(&xs);
        let want = mittag_leffler(0.6, -1.0).unwrap();
        assert!((m - want).abs() < 3.0 * se, "{m} ± {se} vs {want}");
    }

    #[test]
    fn exponential_waiting_times_at_order_one() {
        let p = StableParams::new(1.0).unwrap();
        let mut rng = derive_stream(14, 0);
        let xs: Vec<f64> = (0..200_000)
            .map(|_| {
                if sample_ml_waiting_time(&p, 2.0, &mut rng) > 1.0 {
                    1.0
                } else {
                    0.0
                }
            })
            .collect();
        let (m, se) = mean_se(&xs);
        assert!((m - (-2.0f64).exp()).abs() < 3.0 * se);
    }

    #[test]
    fn draws_are_reproducible() {
        let p = StableParams::new(0.7).unwrap();
        let mut a = derive_stream(5, 3);
        let mut b = derive_stream(5, 3);
        for _ in 0..1000 {
            assert_eq!(
                sample_positive_stable(&p, &mut a).to_bits(),
                sample_positive_stable(&p, &mut b).to_bits()
            );
        }
    }
}
