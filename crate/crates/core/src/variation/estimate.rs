//! Variation-index estimation by slope crossing.
//!
//! For each probe exponent `p` the slope `s(p)` of `log2 V_p^(m)` against `m`
//! is fitted by weighted least squares, the two finest levels counting double.
//! Below the index the sums blow up (`s > 0`), above it they vanish (`s < 0`);
//! the estimate is the linearly interpolated zero of `s`.

use super::sums::{dyadic_sums_multi, VariationProfile};
use crate::error::{check, Error, Result};
use crate::paths::Path;

#[derive(Debug, Clone, PartialEq)]
pub struct IndexEstimate {
    pub v_hat: f64,
    /// `(p, s(p))` for every probe exponent.
    pub slopes: Vec<(f64, f64)>,
    /// Weighted RMS residual of each fit, in units of `log2 V`.
    pub residuals: Vec<f64>,
    pub levels: Vec<u32>,
}

/// Weighted least-squares line through `(x, y)`; returns `(slope, intercept, rms residual)`.
pub fn weighted_slope(x: &[f64], y: &[f64], w: &[f64]) -> Result<(f64, f64, f64)> {
    if x.len() != y.len() || x.len() != w.len() {
        return Err(Error::LengthMismatch {
            expected: x.len(),
            found: y.len().min(w.len()),
        });
    }
    check(x.len() >= 2, "points", x.len() as f64, "need at least two points")?;
    let sw: f64 = w.iter().sum();
    let mx = x.iter().zip(w).map(|(x, w)| x * w).sum::<f64>() / sw;
    let my = y.iter().zip(w).map(|(y, w)| y * w).sum::<f64>() / sw;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for i in 0..x.len() {
        sxx += w[i] * (x[i] - mx) * (x[i] - mx);
        sxy += w[i] * (x[i] - mx) * (y[i] - my);
    }
    check(sxx > 0.0, "x", mx, "needs at least two distinct abscissae")?;
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: f64 = (0..x.len())
        .map(|i| {
            let r = y[i] - intercept - slope * x[i];
            w[i] * r * r
        })
        .sum();
    Ok((slope, intercept, (ss / sw).sqrt()))
}

/// Weights for sorted levels: the two finest count double.
pub(crate) fn level_weights(levels: &[u32]) -> Vec<f64> {
    let max = levels.iter().copied().max().unwrap_or(0);
    levels
        .iter()
        .map(|&m| if m + 1 >= max { 2.0 } else { 1.0 })
        .collect()
}

/// Slope of `log2 V` against level for one profile.
pub(crate) fn profile_slope(profile: &VariationProfile) -> Result<(f64, f64)> {
    if profile.sums.iter().any(|&s| !(s > 0.0) || !s.is_finite()) {
        return Err(Error::DegeneratePath("a dyadic sum is zero or not finite"));
    }
    let x: Vec<f64> = profile.levels.iter().map(|&m| m as f64).collect();
    let y: Vec<f64> = profile.sums.iter().map(|s| s.log2()).collect();
    let (slope, _, rms) = weighted_slope(&x, &y, &level_weights(&profile.levels))?;
    Ok((slope, rms))
}

/// Estimates the variation index of `path` from full-partition sums at `levels`
/// for the increasing probe exponents `p_grid`.
pub fn estimate_index(path: &Path, p_grid: &[f64], levels: &[u32]) -> Result<IndexEstimate> {
    check(p_grid.len() >= 2, "p_grid", p_grid.len() as f64, "needs at least two exponents")?;
    for w in p_grid.windows(2) {
        check(w[0] < w[1], "p_grid", w[1], "must be strictly increasing")?;
    }
    check(levels.len() >= 2, "levels", levels.len() as f64, "needs at least two levels")?;
    let profiles = dyadic_sums_multi(path, p_grid, levels)?;
    estimate_index_from_profiles(&profiles)
}

pub fn estimate_index_from_profiles(profiles: &[VariationProfile]) -> Result<IndexEstimate> {
    let mut slopes = Vec::with_capacity(profiles.len());
    let mut residuals = Vec::with_capacity(profiles.len());
    for prof in profiles {
        let (s, rms) = profile_slope(prof)?;
        slopes.push((prof.p, s));
        residuals.push(rms);
    }
    let crossing = slopes
        .windows(2)
        .find(|w| w[0].1 > 0.0 && w[1].1 <= 0.0)
        .map(|w| {
            let ((p0, s0), (p1, s1)) = (w[0], w[1]);
            p0 + s0 * (p1 - p0) / (s0 - s1)
        });
    let Some(v_hat) = crossing else {
        return Err(Error::NoSignChange {
            p_min: slopes.first().map_or(f64::NAN, |s| s.0),
            p_max: slopes.last().map_or(f64::NAN, |s| s.0),
        });
    };
    Ok(IndexEstimate {
        v_hat,
        slopes,
        residuals,
        levels: profiles.first().map(|p| p.levels.clone()).unwrap_or_default(),
    })
}
