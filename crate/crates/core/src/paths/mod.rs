//! Path simulation on dyadic grids of `[0, 1]`: Brownian motion, fBm, ggBm,
//! the inverse stable clock and TCBM, and the fractional Poisson processes.

mod density;
mod fbm;
mod ggbm;
mod grid;
pub mod io;
mod path;
mod poisson;
mod process;
mod timechange;

pub use density::{empirical_cf, ggbm_joint_pdf, ggbm_joint_pdf_with, CovMatrix, EmpiricalCf};
pub use fbm::{
    fbm_covariance, sample_bm, sample_fbm, FbmMethod, FbmSampler, CHOLESKY_MAX_LEVEL,
};
pub use ggbm::{sample_ggbm, GgbmSampler};
pub use grid::{DyadicGrid, MAX_LEVEL};
pub use path::Path;
pub use poisson::{
    count_at, fpp_pgf, fpp_pmf, fpp_pmf_with, sample_fpp, sample_ftpp,
};
pub use process::ProcessSpec;
pub use timechange::{
    sample_clock_for_grid, sample_tcbm, sample_tcbm_with_clock, sample_time_change, time_change_marginal,
    TimeChangeConfig, TimeChangePath,
};
