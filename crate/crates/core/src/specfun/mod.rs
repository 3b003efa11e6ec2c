//! Mittag-Leffler and M-Wright function families and derived constants.
//!
//! Everything here is a pure function of its arguments.

mod gamma;
mod mittag_leffler;
mod mwright;

pub(crate) use mwright::m_wright_density_robust;

pub use gamma::{gamma, ln_gamma, rgamma, rgamma_sign_ln, sin_pi};
pub use mittag_leffler::{
    mittag_leffler, mittag_leffler_deriv, mittag_leffler_deriv_with, mittag_leffler_with,
};
pub use mwright::{
    gaussian_abs_moment, m_wright_density, m_wright_density_integral, m_wright_density_with, m_wright_moment,
    m_wright_two_var, m_wright_two_var_with, mu_beta_alpha,
};

use crate::error::{check, Result};

/// Truncation and quadrature controls shared by the special functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalConfig {
    /// Absolute truncation tolerance.
    pub series_tolerance: f64,
    pub max_terms: usize,
    /// Initial panel count of the adaptive quadrature.
    pub quadrature_nodes: usize,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            series_tolerance: 1e-12,
            max_terms: 4000,
            quadrature_nodes: 16,
        }
    }
}

impl EvalConfig {
    pub fn new(series_tolerance: f64, max_terms: usize, quadrature_nodes: usize) -> Result<Self> {
        let cfg = Self {
            series_tolerance,
            max_terms,
            quadrature_nodes,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_tolerance(self, series_tolerance: f64) -> Self {
        Self {
            series_tolerance,
            ..self
        }
    }

    pub fn validate(&self) -> Result<()> {
        check(
            self.series_tolerance > 0.0,
            "series_tolerance",
            self.series_tolerance,
            "must be > 0",
        )?;
        check(
            self.max_terms >= 1,
            "max_terms",
            self.max_terms as f64,
            "must be >= 1",
        )?;
        check(
            self.quadrature_nodes >= 8,
            "quadrature_nodes",
            self.quadrature_nodes as f64,
            "must be >= 8",
        )
    }

    pub(crate) fn quad(&self, abs_tol: f64) -> crate::quad::QuadConfig {
        crate::quad::QuadConfig {
            abs_tol,
            rel_tol: abs_tol,
            initial_panels: self.quadrature_nodes,
            max_intervals: 4000,
        }
    }
}

/// Mittag-Leffler order `beta` in `(0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct MLParams {
    beta: f64,
}

impl MLParams {
    pub fn new(beta: f64) -> Result<Self> {
        check(beta > 0.0 && beta <= 1.0, "beta", beta, "must lie in (0, 1]")?;
        Ok(Self { beta })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn mittag_leffler(&self, x: f64) -> Result<f64> {
        mittag_leffler(self.beta, x)
    }
}

/// Neumaier's compensated sum; tracks the largest absolute addend.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    sum: f64,
    comp: f64,
    max_abs: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
        self.max_abs = self.max_abs.max(x.abs());
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }

    /// Rounding error budget from cancellation among large terms.
    pub(crate) fn cancellation_estimate(&self) -> f64 {
        // each term carries a few ulps of error from exp/ln_gamma
        8.0 * f64::EPSILON * self.max_abs
    }
}
