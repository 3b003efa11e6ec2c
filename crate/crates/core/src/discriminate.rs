//! Path classifier separating ggBm from TCBM by their variation behaviour.
//!
//! For `1 < alpha < 2`, ggBm has finite nonzero `2/alpha`-variation and
//! vanishing quadratic variation, while TCBM has finite nonzero quadratic
//! variation and divergent `2/alpha`-variation. The classifier fits the slopes
//! of `log2 V_2^(m)` and `log2 V_{2/alpha}^(m)` over the finest levels of the
//! path and checks which of the two patterns they follow.

use std::fmt;
use std::io::Write;

use crate::ensemble::{run_ensemble, EnsembleConfig};
use crate::error::{check, Result};
use crate::paths::io::format_f64;
use crate::paths::{sample_tcbm, DyadicGrid, GgbmSampler, Path, TimeChangeConfig};
use crate::sampling::RngStream;
use crate::variation::{dyadic_sums_multi, weighted_slope};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    Ggbm,
    Tcbm,
    Inconclusive,
}

impl Label {
    pub fn as_str(&self) -> &'static str {
        match self {
            Label::Ggbm => "GGBM",
            Label::Tcbm => "TCBM",
            Label::Inconclusive => "INCONCLUSIVE",
        }
    }

    fn column(&self) -> usize {
        match self {
            Label::Ggbm => 0,
            Label::Tcbm => 1,
            Label::Inconclusive => 2,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscriminatorConfig {
    /// Number of finest levels used in the slope fits.
    pub window: u32,
    /// Half-width of the band in which a slope counts as stable.
    pub eps_stable: f64,
    /// Minimum absolute slope that counts as decay or growth.
    pub eps_trend: f64,
}

impl Default for DiscriminatorConfig {
    fn default() -> Self {
        Self {
            window: 4,
            eps_stable: 0.14,
            eps_trend: 0.16,
        }
    }
}

impl DiscriminatorConfig {
    pub fn validate(&self) -> Result<()> {
        check(self.window >= 3, "window", self.window as f64, "must be >= 3")?;
        check(self.eps_stable > 0.0, "eps_stable", self.eps_stable, "must be > 0")?;
        check(self.eps_trend > 0.0, "eps_trend", self.eps_trend, "must be > 0")?;
        // keeps the two decision regions disjoint
        check(
            self.eps_stable < self.eps_trend,
            "eps_stable",
            self.eps_stable,
            "must be < eps_trend",
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Verdict {
    pub label: Label,
    /// Slope of `log2 V_2`; `NaN` when a sum vanished.
    pub slope_2: f64,
    /// Slope of `log2 V_{2/alpha}`; `NaN` when a sum vanished.
    pub slope_2a: f64,
    pub eps_stable: f64,
    pub eps_trend: f64,
}

fn check_alpha(alpha: f64) -> Result<()> {
    check(alpha > 1.0 && alpha < 2.0, "alpha", alpha, "must lie in (1, 2)")
}

/// Labels `path` as ggBm-like, TCBM-like or inconclusive.
pub fn classify(path: &Path, alpha: f64, cfg: &DiscriminatorConfig) -> Result<Verdict> {
    check_alpha(alpha)?;
    cfg.validate()?;
    let top = path.level();
    check(
        top >= cfg.window,
        "level",
        top as f64,
        "path level must be at least the window size",
    )?;
    let levels: Vec<u32> = (top + 1 - cfg.window..=top).collect();
    let profiles = dyadic_sums_multi(path, &[2.0, 2.0 / alpha], &levels)?;
    let x: Vec<f64> = levels.iter().map(|&m| m as f64).collect();
    let w = vec![1.0; levels.len()];
    let mut slopes = [f64::NAN; 2];
    for (slot, prof) in slopes.iter_mut().zip(&profiles) {
        if prof.sums.iter().all(|&s| s > 0.0 && s.is_finite()) {
            let y: Vec<f64> = prof.sums.iter().map(|s| s.log2()).collect();
            *slot = weighted_slope(&x, &y, &w)?.0;
        }
    }
    let [slope_2, slope_2a] = slopes;
    let (es, ed) = (cfg.eps_stable, cfg.eps_trend);
    // NaN slopes fail every comparison and fall through to inconclusive
    let label = if slope_2 <= -ed && slope_2a.abs() <= es {
        Label::Ggbm
    } else if slope_2.abs() <= es && slope_2a >= ed {
        Label::Tcbm
    } else {
        Label::Inconclusive
    };
    Ok(Verdict {
        label,
        slope_2,
        slope_2a,
        eps_stable: es,
        eps_trend: ed,
    })
}

/// One classified replica of a confusion experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifiedReplica {
    pub replica: usize,
    pub true_class: Label,
    pub verdict: Verdict,
}

/// Rows: true class (ggBm, TCBM). Columns: GGBM, TCBM, INCONCLUSIVE.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfusionMatrix {
    pub counts: [[u64; 3]; 2],
    pub replicas: Vec<ClassifiedReplica>,
}

impl ConfusionMatrix {
    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    /// Fraction of paths given their true label.
    pub fn accuracy(&self) -> f64 {
        (self.counts[0][0] + self.counts[1][1]) as f64 / self.total() as f64
    }

    pub fn inconclusive_rate(&self) -> f64 {
        (self.counts[0][2] + self.counts[1][2]) as f64 / self.total() as f64
    }

    /// Writes `replica,true_class,label,slope_2,slope_2a` rows.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "replica,true_class,label,slope_2,slope_2a")?;
        for r in &self.replicas {
            writeln!(
                out,
                "{},{},{},{},{}",
                r.replica,
                r.true_class,
                r.verdict.label,
                format_f64(r.verdict.slope_2),
                format_f64(r.verdict.slope_2a)
            )?;
        }
        Ok(())
    }
}

/// Settings of a confusion experiment besides the process parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfusionSetup {
    pub n_per_class: usize,
    pub level: u32,
    pub seed: u64,
    pub threads: usize,
    pub discriminator: DiscriminatorConfig,
    pub time_change: TimeChangeConfig,
}

/// Simulates `n_per_class` ggBm and TCBM paths and classifies each.
///
/// ggBm replica `i` uses stream `i`, TCBM replica `i` stream `n_per_class + i`,
/// so the matrix depends only on the seed.
pub fn confusion_experiment(beta: f64, alpha: f64, setup: &ConfusionSetup) -> Result<ConfusionMatrix> {
    check(beta > 0.0 && beta < 1.0, "beta", beta, "must lie in (0, 1)")?;
    check_alpha(alpha)?;
    let grid = DyadicGrid::new(setup.level)?;
    let ggbm = GgbmSampler::new(beta, alpha, grid)?;
    run_confusion(
        alpha,
        setup,
        |rng| Ok(ggbm.sample(rng)),
        |rng| sample_tcbm(beta, alpha, grid, &setup.time_change, rng),
    )
}

/// Classifies `n_per_class` paths from each generator, with the stream layout
/// of [`confusion_experiment`].
pub(crate) fn run_confusion<G, T>(
    alpha: f64,
    setup: &ConfusionSetup,
    ggbm_like: G,
    tcbm_like: T,
) -> Result<ConfusionMatrix>
where
    G: Fn(&mut RngStream) -> Result<Path> + Sync,
    T: Fn(&mut RngStream) -> Result<Path> + Sync,
{
    check_alpha(alpha)?;
    check(
        setup.n_per_class >= 1,
        "n_per_class",
        setup.n_per_class as f64,
        "must be >= 1",
    )?;
    setup.discriminator.validate()?;
    let n = setup.n_per_class;
    let base = EnsembleConfig::new(setup.seed, n, setup.threads);
    let g = run_ensemble(&base, |rng, _| classify(&ggbm_like(rng)?, alpha, &setup.discriminator))?;
    let t = run_ensemble(&base.with_offset(n as u64), |rng, _| {
        classify(&tcbm_like(rng)?, alpha, &setup.discriminator)
    })?;
    let mut counts = [[0u64; 3]; 2];
    let mut replicas = Vec::with_capacity(2 * n);
    for (row, (class, verdicts)) in [(Label::Ggbm, g), (Label::Tcbm, t)].into_iter().enumerate() {
        for (i, verdict) in verdicts.into_iter().enumerate() {
            counts[row][verdict.label.column()] += 1;
            replicas.push(ClassifiedReplica {
                replica: row * n + i,
                true_class: class,
                verdict,
            });
        }
    }
    Ok(ConfusionMatrix { counts, replicas })
}
