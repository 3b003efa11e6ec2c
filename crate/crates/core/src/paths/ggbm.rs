use super::{DyadicGrid, FbmMethod, FbmSampler, Path, ProcessSpec};
use crate::error::{check, Result};
use crate::sampling::{sample_m_wright, RngStream, StableParams};

/// Sampler for ggBm as the product `sqrt(Y) B_{alpha/2}` with `Y ~ M_beta`
/// independent of the fBm; reusable across replicas.
#[derive(Debug, Clone)]
pub struct GgbmSampler {
    beta: f64,
    alpha: f64,
    stable: StableParams,
    fbm: FbmSampler,
}

impl GgbmSampler {
    pub fn new(beta: f64, alpha: f64, grid: DyadicGrid) -> Result<Self> {
        Self::with_method(beta, alpha, grid, FbmMethod::Circulant)
    }

    pub fn with_method(beta: f64, alpha: f64, grid: DyadicGrid, method: FbmMethod) -> Result<Self> {
        check(beta > 0.0 && beta <= 1.0, "beta", beta, "must lie in (0, 1]")?;
        check(alpha > 0.0 && alpha < 2.0, "alpha", alpha, "must lie in (0, 2)")?;
        Ok(Self {
            beta,
            alpha,
            stable: StableParams::new(beta)?,
            fbm: FbmSampler::new(alpha / 2.0, grid, method)?,
        })
    }

    pub fn grid(&self) -> DyadicGrid {
        self.fbm.grid()
    }

    /// Draws `Y` first, then the fBm path.
    pub fn sample(&self, rng: &mut RngStream) -> Path {
        let y = sample_m_wright(&self.stable, rng);
        let scale = y.sqrt();
        let values = self
            .fbm
            .sample_values(rng)
            .into_iter()
            .map(|v| scale * v)
            .collect();
        let spec = ProcessSpec::Ggbm {
            beta: self.beta,
            alpha: self.alpha,
        };
        Path::new(self.grid(), values, Some(spec)).expect("sampler output matches its grid")
    }
}

/// One ggBm path. For `beta = 1` this is fBm with `H = alpha / 2`.
pub fn sample_ggbm(beta: f64, alpha: f64, grid: DyadicGrid, rng: &mut RngStream) -> Result<Path> {
    Ok(GgbmSampler::new(beta, alpha, grid)?.sample(rng))
}
