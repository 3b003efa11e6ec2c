use std::io::Write;

use crate::error::{check, Error, Result};
use crate::paths::io::format_f64;
use crate::paths::Path;

/// Longest sequence accepted by [`exact_p_variation`] (`2^12 + 1`).
pub const EXACT_MAX_LEN: usize = (1 << 12) + 1;

/// Which statistic a [`VariationProfile`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumKind {
    /// `sum_i |w(i 2^-m) - w((i-1) 2^-m)|^p` over the full level-`m` partition.
    Full,
    /// Maximum over all sub-partitions of the level-`m` grid.
    Max,
}

/// `V_p^(m)` for a list of levels.
#[derive(Debug, Clone, PartialEq)]
pub struct VariationProfile {
    pub p: f64,
    pub kind: SumKind,
    pub levels: Vec<u32>,
    pub sums: Vec<f64>,
}

impl VariationProfile {
    pub fn sum_at(&self, level: u32) -> Option<f64> {
        self.levels
            .iter()
            .position(|&m| m == level)
            .map(|i| self.sums[i])
    }
}

#[inline]
fn abs_pow(x: f64, p: f64) -> f64 {
    let a = x.abs();
    if p == 2.0 {
        a * a
    } else if p == 1.0 {
        a
    } else {
        a.powf(p)
    }
}

fn check_levels(path: &Path, levels: &[u32]) -> Result<()> {
    for &m in levels {
        check(m >= 1, "level", m as f64, "must be >= 1")?;
        if m > path.level() {
            return Err(Error::LevelExceedsGrid {
                requested: m,
                available: path.level(),
            });
        }
    }
    Ok(())
}

/// Full-partition sums `V_p^(m)` on the given levels, using grid values only.
pub fn dyadic_sums(path: &Path, p: f64, levels: &[u32]) -> Result<VariationProfile> {
    Ok(dyadic_sums_multi(path, &[p], levels)?.remove(0))
}

/// [`dyadic_sums`] for several exponents at once; increments are extracted once per level.
pub fn dyadic_sums_multi(path: &Path, ps: &[f64], levels: &[u32]) -> Result<Vec<VariationProfile>> {
    for &p in ps {
        check(p > 0.0 && p.is_finite(), "p", p, "must be finite and > 0")?;
    }
    check_levels(path, levels)?;
    let mut out: Vec<VariationProfile> = ps
        .iter()
        .map(|&p| VariationProfile {
            p,
            kind: SumKind::Full,
            levels: levels.to_vec(),
            sums: Vec::with_capacity(levels.len()),
        })
        .collect();
    let mut increments = Vec::new();
    for &m in levels {
        increments.clear();
        increments.extend(path.increments(m)?.map(f64::abs));
        for prof in out.iter_mut() {
            let s: f64 = increments.iter().map(|&d| abs_pow(d, prof.p)).sum();
            prof.sums.push(s);
        }
    }
    Ok(out)
}

/// Maximum-over-sub-partitions sums: at level `m`, the exact p-variation of the
/// level-`m` grid values. Nondecreasing in `m` because the grids are nested.
pub fn dyadic_max_sums(path: &Path, p: f64, levels: &[u32]) -> Result<VariationProfile> {
    check_levels(path, levels)?;
    let mut sums = Vec::with_capacity(levels.len());
    for &m in levels {
        let coarse = path.subsample(m)?;
        sums.push(exact_p_variation(coarse.values(), p)?);
    }
    Ok(VariationProfile {
        p,
        kind: SumKind::Max,
        levels: levels.to_vec(),
        sums,
    })
}

/// `max` over subsequences `0 = i_0 < ... < i_k = n-1` of `sum_j |v_{i_j} - v_{i_{j-1}}|^p`,
/// by the `O(n^2)` recursion `best[j] = max_{i<j} best[i] + |v_j - v_i|^p`.
pub fn exact_p_variation(values: &[f64], p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::ExponentBelowOne(p));
    }
    check(p.is_finite(), "p", p, "must be finite")?;
    check(
        values.len() <= EXACT_MAX_LEN,
        "values.len()",
        values.len() as f64,
        "must be <= 4097",
    )?;
    let n = values.len();
    if n < 2 {
        return Ok(0.0);
    }
    if p == 1.0 {
        // total variation: every refinement helps, so the full partition is optimal
        return Ok(values.windows(2).map(|w| (w[1] - w[0]).abs()).sum());
    }
    let mut best = vec![0.0f64; n];
    for j in 1..n {
        let vj = values[j];
        let mut b = f64::NEG_INFINITY;
        for i in 0..j {
            let c = best[i] + abs_pow(vj - values[i], p);
            if c > b {
                b = c;
            }
        }
        best[j] = b;
    }
    Ok(best[n - 1])
}

/// Writes profiles as `p,level,sum` rows with a header.
pub fn write_profiles_csv<W: Write>(profiles: &[VariationProfile], mut out: W) -> Result<()> {
    writeln!(out, "p,level,sum")?;
    for prof in profiles {
        for (m, s) in prof.levels.iter().zip(&prof.sums) {
            writeln!(out, "{},{},{}", format_f64(prof.p), m, format_f64(*s))?;
        }
    }
    Ok(())
}
