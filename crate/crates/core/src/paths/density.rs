//! Finite-dimensional densities of ggBm and empirical characteristic functions.

use std::f64::consts::PI;

use super::fbm::packed_cholesky;
use super::Path;
use crate::error::{check, Error, Result};
use crate::quad::{self, QuadConfig};
use crate::specfun::{m_wright_density_robust, EvalConfig};

/// `Sigma_alpha[k][j] = t_k^alpha + t_j^alpha - |t_k - t_j|^alpha`.
#[derive(Debug, Clone, PartialEq)]
pub struct CovMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl CovMatrix {
    pub fn new(times: &[f64], alpha: f64) -> Result<Self> {
        check(alpha > 0.0 && alpha < 2.0, "alpha", alpha, "must lie in (0, 2)")?;
        check(!times.is_empty(), "times", 0.0, "must be nonempty")?;
        for &t in times {
            check(t > 0.0 && t.is_finite(), "times", t, "must be finite and > 0")?;
        }
        for w in times.windows(2) {
            check(w[0] < w[1], "times", w[1], "must be strictly increasing")?;
        }
        let n = times.len();
        let mut entries = vec![0.0; n * n];
        for k in 0..n {
            for j in 0..n {
                entries[k * n + j] =
                    times[k].powf(alpha) + times[j].powf(alpha) - (times[k] - times[j]).abs().powf(alpha);
            }
        }
        Ok(Self { n, entries })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, k: usize, j: usize) -> f64 {
        self.entries[k * self.n + j]
    }

    /// `(ln det Sigma, theta^T Sigma^{-1} theta)` through a Cholesky factor.
    pub fn log_det_and_quad_form(&self, theta: &[f64]) -> Result<(f64, f64)> {
        if theta.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: theta.len(),
            });
        }
        let l = packed_cholesky(self.n, |i, j| self.get(i, j))
            .map_err(|_| Error::NotPositiveDefinite("Sigma_alpha is singular"))?;
        let at = |i: usize, j: usize| l[i * (i + 1) / 2 + j];
        let mut log_det = 0.0;
        let mut y = vec![0.0; self.n];
        let mut q = 0.0;
        for i in 0..self.n {
            log_det += 2.0 * at(i, i).ln();
            let s: f64 = (0..i).map(|k| at(i, k) * y[k]).sum();
            y[i] = (theta[i] - s) / at(i, i);
            q += y[i] * y[i];
        }
        Ok((log_det, q))
    }
}

/// Joint density of `(B(t_1), ..., B(t_n))`, default [`EvalConfig`].
pub fn ggbm_joint_pdf(theta: &[f64], times: &[f64], beta: f64, alpha: f64) -> Result<f64> {
    ggbm_joint_pdf_with(theta, times, beta, alpha, &EvalConfig::default())
}

/// Evaluates the Gaussian mixture
///
/// ```text
/// f(theta) = (2 pi)^{-n/2} det(Sigma)^{-1/2} int_0^inf tau^{-n/2} exp(-q / (2 tau)) M_beta(tau) dtau
/// ```
///
/// with `q = theta^T Sigma^{-1} theta` and `Sigma = Sigma_alpha`, for `n <= 3`.
/// The quadrature runs in `v = sqrt(tau)`, which makes the `n = 1` integrand
/// bounded at the origin. For `n >= 2` the density is unbounded at `theta = 0`,
/// which is rejected.
pub fn ggbm_joint_pdf_with(
    theta: &[f64],
    times: &[f64],
    beta: f64,
    alpha: f64,
    cfg: &EvalConfig,
) -> Result<f64> {
    check(beta > 0.0 && beta <= 1.0, "beta", beta, "must lie in (0, 1]")?;
    check(
        (1..=3).contains(&times.len()),
        "n",
        times.len() as f64,
        "dimension must lie in 1..=3",
    )?;
    cfg.validate()?;
    let sigma = CovMatrix::new(times, alpha)?;
    let (log_det, q) = sigma.log_det_and_quad_form(theta)?;
    let n = times.len() as i32;
    let norm = (-0.5 * n as f64 * (2.0 * PI).ln() - 0.5 * log_det).exp();
    if beta == 1.0 {
        return Ok(norm * (-0.5 * q).exp());
    }
    if q == 0.0 && n >= 2 {
        return Err(Error::InvalidParameter {
            name: "theta",
            value: 0.0,
            constraint: "the density is unbounded at the origin for n >= 2",
        });
    }
    // M_beta(tau) < exp(-50) beyond tau_max
    let c = (1.0 - beta) * beta.powf(beta / (1.0 - beta));
    let v_max = (50.0 / c).powf(1.0 - beta).sqrt();
    let integrand = |v: f64| -> Result<f64> {
        if v <= 0.0 {
            return Ok(if n == 1 && q == 0.0 {
                2.0 * m_wright_density_robust(beta, 0.0, cfg)?
            } else {
                0.0
            });
        }
        let tau = v * v;
        let gauss = (-0.5 * q / tau).exp();
        if gauss == 0.0 {
            return Ok(0.0);
        }
        Ok(2.0 * v.powi(1 - n) * gauss * m_wright_density_robust(beta, tau, cfg)?)
    };
    let qcfg = QuadConfig {
        abs_tol: cfg.series_tolerance,
        rel_tol: (10.0 * cfg.series_tolerance).max(1e-13),
        initial_panels: cfg.quadrature_nodes,
        max_intervals: 4000,
    };
    let (integral, _) = quad::try_integrate(integrand, 0.0, v_max, &qcfg)?;
    Ok(norm * integral)
}

/// Sample mean of `exp(i theta X)` with standard errors of both parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmpiricalCf {
    pub re: f64,
    pub im: f64,
    pub se_re: f64,
    pub se_im: f64,
    pub samples: usize,
}

impl EmpiricalCf {
    pub fn from_samples(samples: &[f64], theta: f64) -> Result<Self> {
        check(!samples.is_empty(), "samples", 0.0, "ensemble must be nonempty")?;
        let n = samples.len() as f64;
        let (mut sc, mut ss, mut sc2, mut ss2) = (0.0, 0.0, 0.0, 0.0);
        for &x in samples {
            let (s, c) = (theta * x).sin_cos();
            sc += c;
            ss += s;
            sc2 += c * c;
            ss2 += s * s;
        }
        let re = sc / n;
        let im = ss / n;
        let se = |mean: f64, sq: f64| {
            if samples.len() < 2 {
                return 0.0;
            }
            let var = ((sq - n * mean * mean) / (n - 1.0)).max(0.0);
            (var / n).sqrt()
        };
        Ok(Self {
            re,
            im,
            se_re: se(re, sc2),
            se_im: se(im, ss2),
            samples: samples.len(),
        })
    }
}

/// Empirical characteristic function of an ensemble at grid time `t`.
pub fn empirical_cf(paths: &[Path], t: f64, theta: f64) -> Result<EmpiricalCf> {
    let values = paths
        .iter()
        .map(|p| {
            p.value_at(t).ok_or(Error::InvalidParameter {
                name: "t",
                value: t,
                constraint: "must be a point of every path grid",
            })
        })
        .collect::<Result<Vec<f64>>>()?;
    EmpiricalCf::from_samples(&values, theta)
}
