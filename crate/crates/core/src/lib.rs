//! Simulation and path statistics for generalized grey Brownian motion (ggBm)
//! and Brownian motion time-changed by an inverse stable subordinator (TCBM).
//!
//! The two processes share their one-dimensional laws but induce mutually
//! singular measures on path space. This crate provides:
//!
//! * [`specfun`]: Mittag-Leffler and M-Wright functions and derived constants.
//! * [`sampling`]: counter-based random streams and exact samplers for the
//!   positive stable, M-Wright, and Mittag-Leffler laws.
//! * [`paths`]: dyadic-grid paths of Bm, fBm, ggBm, TCBM and the (fractal-time)
//!   fractional Poisson process, plus their analytic finite-dimensional laws.
//! * [`variation`]: dyadic p-variation sums, exact p-variation, index estimation.
//! * [`discriminate`]: a p-variation classifier that separates ggBm from TCBM paths.
//! * [`sde`]: pathwise (Young) and time-changed Euler solvers.

pub mod discriminate;
pub mod ensemble;
pub mod error;
pub mod paths;
pub mod quad;
pub mod sampling;
pub mod sde;
pub mod specfun;
pub mod variation;

pub use error::{Error, Result};
