//! Fractional Brownian motion on a dyadic grid.
//!
//! The default sampler embeds the covariance of the fractional Gaussian noise
//! `X(t_{i+1}) - X(t_i)` into a circulant matrix of size `2^{m+1}` and draws it
//! with two FFTs (Davies-Harte). The embedding is nonnegative definite for every
//! `H` in `(0, 1)`, so the draw is exact. A dense Cholesky sampler of the path
//! covariance is kept for small grids and as a reference.

use std::sync::Arc;

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use super::{DyadicGrid, Path, ProcessSpec};
use crate::error::{check, Error, Result};
use crate::sampling::RngStream;

/// Largest level accepted by the dense Cholesky sampler.
pub const CHOLESKY_MAX_LEVEL: u32 = 11;

/// `Cov(B_H(s), B_H(t)) = (s^{2H} + t^{2H} - |t - s|^{2H}) / 2`.
pub fn fbm_covariance(hurst: f64, s: f64, t: f64) -> f64 {
    let h2 = 2.0 * hurst;
    0.5 * (s.abs().powf(h2) + t.abs().powf(h2) - (t - s).abs().powf(h2))
}

/// Autocovariance of unit-spacing fractional Gaussian noise at lag `k`.
fn fgn_autocovariance(hurst: f64, k: usize) -> f64 {
    let h2 = 2.0 * hurst;
    let k = k as f64;
    0.5 * ((k + 1.0).powf(h2) - 2.0 * k.powf(h2) + (k - 1.0).abs().powf(h2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FbmMethod {
    #[default]
    Circulant,
    Cholesky,
}

/// Precomputed fBm sampler for one `(H, grid)` pair; reusable across replicas.
#[derive(Clone)]
pub struct FbmSampler {
    hurst: f64,
    grid: DyadicGrid,
    kind: Kind,
}

#[derive(Clone)]
enum Kind {
    Circulant {
        sqrt_eig: Vec<f64>,
        fft: Arc<dyn Fft<f64>>,
    },
    Cholesky {
        // row-major lower triangle, rows packed
        lower: Vec<f64>,
    },
}

impl std::fmt::Debug for FbmSampler {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let method = match self.kind {
            Kind::Circulant { .. } => FbmMethod::Circulant,
            Kind::Cholesky { .. } => FbmMethod::Cholesky,
        };
        f.debug_struct("FbmSampler")
            .field("hurst", &self.hurst)
            .field("grid", &self.grid)
            .field("method", &method)
            .finish()
    }
}

impl FbmSampler {
    pub fn new(hurst: f64, grid: DyadicGrid, method: FbmMethod) -> Result<Self> {
        check(hurst > 0.0 && hurst < 1.0, "hurst", hurst, "must lie in (0, 1)")?;
        let kind = match method {
            FbmMethod::Circulant => circulant(hurst, grid)?,
            FbmMethod::Cholesky => cholesky(hurst, grid)?,
        };
        Ok(Self { hurst, grid, kind })
    }

    pub fn hurst(&self) -> f64 {
        self.hurst
    }

    pub fn grid(&self) -> DyadicGrid {
        self.grid
    }

    /// Raw path values (starting with 0) without wrapping them in a [`Path`].
    pub fn sample_values(&self, rng: &mut RngStream) -> Vec<f64> {
        let n = self.grid.intervals();
        let mut values = Vec::with_capacity(n + 1);
        values.push(0.0);
        match &self.kind {
            Kind::Circulant { sqrt_eig, fft } => {
                let mut buf: Vec<Complex<f64>> = sqrt_eig
                    .iter()
                    .map(|&s| {
                        let re = rng.standard_normal();
                        let im = rng.standard_normal();
                        Complex::new(s * re, s * im)
                    })
                    .collect();
                fft.process(&mut buf);
                let scale = self.grid.step().powf(self.hurst);
                let mut acc = 0.0;
                for z in &buf[..n] {
                    acc += scale * z.re;
                    values.push(acc);
                }
            }
            Kind::Cholesky { lower } => {
                let z: Vec<f64> = (0..n).map(|_| rng.standard_normal()).collect();
                let mut offset = 0;
                for i in 0..n {
                    let row = &lower[offset..offset + i + 1];
                    values.push(row.iter().zip(&z).map(|(l, z)| l * z).sum());
                    offset += i + 1;
                }
            }
        }
        values
    }

    pub fn sample(&self, rng: &mut RngStream) -> Path {
        let values = self.sample_values(rng);
        Path::new(self.grid, values, Some(ProcessSpec::Fbm { hurst: self.hurst }))
            .expect("sampler output matches its grid")
    }
}

fn circulant(hurst: f64, grid: DyadicGrid) -> Result<Kind> {
    let n = grid.intervals();
    let size = 2 * n;
    let mut c: Vec<Complex<f64>> = Vec::with_capacity(size);
    for k in 0..=n {
        c.push(Complex::new(fgn_autocovariance(hurst, k), 0.0));
    }
    for k in (1..n).rev() {
        c.push(Complex::new(fgn_autocovariance(hurst, k), 0.0));
    }
    let fft = FftPlanner::new().plan_fft_forward(size);
    fft.process(&mut c);
    let max = c.iter().fold(0.0f64, |m, z| m.max(z.re.abs()));
    let mut sqrt_eig = Vec::with_capacity(size);
    for z in &c {
        let lambda = z.re;
        if lambda < -1e-10 * max {
            return Err(Error::NotPositiveDefinite("circulant embedding of fGn"));
        }
        sqrt_eig.push((lambda.max(0.0) / size as f64).sqrt());
    }
    Ok(Kind::Circulant { sqrt_eig, fft })
}

fn cholesky(hurst: f64, grid: DyadicGrid) -> Result<Kind> {
    if grid.level() > CHOLESKY_MAX_LEVEL {
        return Err(Error::LevelExceedsGrid {
            requested: grid.level(),
            available: CHOLESKY_MAX_LEVEL,
        });
    }
    let n = grid.intervals();
    let times: Vec<f64> = (1..=n).map(|i| grid.time(i)).collect();
    let lower = packed_cholesky(n, |i, j| fbm_covariance(hurst, times[i], times[j]))?;
    Ok(Kind::Cholesky { lower })
}

/// Packed lower-triangular Cholesky factor of the `n x n` matrix `a(i, j)`.
pub(crate) fn packed_cholesky(n: usize, a: impl Fn(usize, usize) -> f64) -> Result<Vec<f64>> {
    let row_start = |i: usize| i * (i + 1) / 2;
    let mut l = vec![0.0; n * (n + 1) / 2];
    for i in 0..n {
        let ri = row_start(i);
        for j in 0..=i {
            let rj = row_start(j);
            let dot: f64 = (0..j).map(|k| l[ri + k] * l[rj + k]).sum();
            let v = a(i, j) - dot;
            if i == j {
                if v <= 0.0 {
                    return Err(Error::NotPositiveDefinite("covariance matrix"));
                }
                l[ri + j] = v.sqrt();
            } else {
                l[ri + j] = v / l[rj + j];
            }
        }
    }
    Ok(l)
}

/// One fBm path; builds a fresh [`FbmSampler`]. Use the sampler directly for ensembles.
pub fn sample_fbm(hurst: f64, grid: DyadicGrid, rng: &mut RngStream) -> Result<Path> {
    Ok(FbmSampler::new(hurst, grid, FbmMethod::Circulant)?.sample(rng))
}

/// Brownian motion as a cumulative sum of independent `N(0, 2^-m)` increments.
pub fn sample_bm(grid: DyadicGrid, rng: &mut RngStream) -> Path {
    let sd = grid.step().sqrt();
    let mut values = Vec::with_capacity(grid.len());
    values.push(0.0);
    let mut acc = 0.0;
    for _ in 0..grid.intervals() {
        acc += sd * rng.standard_normal();
        values.push(acc);
    }
    Path::new(grid, values, Some(ProcessSpec::Bm)).expect("length matches grid")
}
