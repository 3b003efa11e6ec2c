//! SDEs driven by ggBm (pathwise Young equations) and by time-changed Brownian
//! motion (Itô equations run on the clock `U`).
//!
//! * [`solve_young`]: forward Euler `X_{i+1} = X_i + g(X_i) dB_i + b(X_i) dt` on
//!   the grid of a given driver path.
//! * [`solve_time_changed`]: draws the clock `u_i = U(t_i)`, then Euler-Maruyama
//!   for `dZ = f(Z) dW + b(Z) du` stepping exactly on the `u_i`, and returns
//!   `Y_i = Z(u_i)`. Steps with `du = 0` leave the solution unchanged.

use std::collections::BTreeMap;

use crate::discriminate::{run_confusion, ConfusionMatrix, ConfusionSetup};
use crate::error::{check, Error, Result};
use crate::paths::{
    sample_clock_for_grid, DyadicGrid, GgbmSampler, Path, ProcessSpec, TimeChangeConfig,
    TimeChangePath,
};
use crate::sampling::RngStream;

/// Declared regularity of a coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Smoothness {
    /// Infinitely differentiable.
    Smooth,
    /// `C^{1+kappa}` with the given Lipschitz bound.
    Holder { kappa: f64, lipschitz: f64 },
    /// Lipschitz only.
    Lipschitz { constant: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum CoefficientKind {
    Constant(f64),
    /// `c x`
    Linear(f64),
    /// `a x + b`
    Affine { a: f64, b: f64 },
    /// Piecewise-linear interpolant through `(xs, ys)`, constant beyond the ends.
    Table { xs: Vec<f64>, ys: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSpec {
    kind: CoefficientKind,
    smoothness: Smoothness,
}

impl CoefficientSpec {
    pub fn constant(c: f64) -> Self {
        Self {
            kind: CoefficientKind::Constant(c),
            smoothness: Smoothness::Smooth,
        }
    }

    pub fn linear(c: f64) -> Self {
        Self {
            kind: CoefficientKind::Linear(c),
            smoothness: Smoothness::Smooth,
        }
    }

    pub fn affine(a: f64, b: f64) -> Self {
        Self {
            kind: CoefficientKind::Affine { a, b },
            smoothness: Smoothness::Smooth,
        }
    }

    /// Tabulated coefficient. `smoothness` must not be [`Smoothness::Smooth`] and
    /// its Lipschitz bound must dominate every slope of the table.
    pub fn table(xs: Vec<f64>, ys: Vec<f64>, smoothness: Smoothness) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::LengthMismatch {
                expected: xs.len(),
                found: ys.len(),
            });
        }
        check(xs.len() >= 2, "table", xs.len() as f64, "needs at least two nodes")?;
        if xs.iter().chain(&ys).any(|v| !v.is_finite()) {
            return Err(Error::Coefficient("table entries must be finite".into()));
        }
        for w in xs.windows(2) {
            check(w[0] < w[1], "table xs", w[1], "must be strictly increasing")?;
        }
        let bound = match smoothness {
            Smoothness::Smooth => {
                return Err(Error::Coefficient(
                    "a piecewise-linear table cannot be declared smooth".into(),
                ))
            }
            Smoothness::Holder { kappa, lipschitz } => {
                check(kappa > 0.0 && kappa <= 1.0, "kappa", kappa, "must lie in (0, 1]")?;
                lipschitz
            }
            Smoothness::Lipschitz { constant } => constant,
        };
        let steepest = xs
            .windows(2)
            .zip(ys.windows(2))
            .map(|(x, y)| ((y[1] - y[0]) / (x[1] - x[0])).abs())
            .fold(0.0, f64::max);
        if !(bound >= steepest) {
            return Err(Error::Coefficient(format!(
                "declared Lipschitz bound {bound} is below the table slope {steepest}"
            )));
        }
        Ok(Self {
            kind: CoefficientKind::Table { xs, ys },
            smoothness,
        })
    }

    pub fn kind(&self) -> &CoefficientKind {
        &self.kind
    }

    pub fn smoothness(&self) -> Smoothness {
        self.smoothness
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        match &self.kind {
            CoefficientKind::Constant(c) => *c,
            CoefficientKind::Linear(c) => c * x,
            CoefficientKind::Affine { a, b } => a * x + b,
            CoefficientKind::Table { xs, ys } => {
                let n = xs.len();
                if x <= xs[0] {
                    return ys[0];
                }
                if x >= xs[n - 1] {
                    return ys[n - 1];
                }
                let j = xs.partition_point(|&v| v <= x);
                let (x0, x1, y0, y1) = (xs[j - 1], xs[j], ys[j - 1], ys[j]);
                y0 + (y1 - y0) * (x - x0) / (x1 - x0)
            }
        }
    }

    /// Short description for reports.
    pub fn describe(&self) -> String {
        match &self.kind {
            CoefficientKind::Constant(c) => format!("constant({c})"),
            CoefficientKind::Linear(c) => format!("linear({c})"),
            CoefficientKind::Affine { a, b } => format!("affine({a},{b})"),
            CoefficientKind::Table { xs, .. } => format!("table({} nodes)", xs.len()),
        }
    }
}

/// Which solver produced a [`SolutionPath`] and from what.
#[derive(Debug, Clone, PartialEq)]
pub enum Driver {
    /// Pathwise solution along a given driver path.
    Young { process: Option<ProcessSpec> },
    /// Itô solution composed with a simulated clock.
    TimeChanged { beta: f64, alpha: f64, clock: TimeChangePath },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolutionPath {
    pub path: Path,
    pub driver: Driver,
    /// The coefficient is not certified to satisfy the smoothness the
    /// well-posedness theory asks for (a declared-`C^{1+kappa}` table).
    pub outside_proven_regime: bool,
}

impl SolutionPath {
    pub fn initial_value(&self) -> f64 {
        self.path.values()[0]
    }

    /// Key-value description for a path sidecar.
    pub fn metadata(&self) -> BTreeMap<String, String> {
        let mut meta = BTreeMap::new();
        meta.insert("x0".into(), self.initial_value().to_string());
        meta.insert(
            "outside_proven_regime".into(),
            self.outside_proven_regime.to_string(),
        );
        match &self.driver {
            Driver::Young { process } => {
                meta.insert("solver".into(), "young-euler".into());
                if let Some(spec) = process {
                    for (k, v) in spec.to_pairs() {
                        meta.insert(format!("driver_{k}"), v);
                    }
                }
            }
            Driver::TimeChanged { beta, alpha, clock } => {
                meta.insert("solver".into(), "time-changed-euler-maruyama".into());
                meta.insert("driver_process".into(), "tcbm".into());
                meta.insert("driver_beta".into(), beta.to_string());
                meta.insert("driver_alpha".into(), alpha.to_string());
                if let Some(delta) = clock.operational_step {
                    meta.insert("operational_step".into(), delta.to_string());
                }
            }
        }
        meta
    }
}

/// Roughness exponent `alpha` of a driver, when its process is known.
fn driver_alpha(process: Option<ProcessSpec>) -> Option<f64> {
    match process? {
        ProcessSpec::Bm => Some(1.0),
        ProcessSpec::Fbm { hurst } => Some(2.0 * hurst),
        ProcessSpec::Ggbm { alpha, .. } | ProcessSpec::Tcbm { alpha, .. } => Some(alpha),
        ProcessSpec::Fpp { .. } | ProcessSpec::Ftpp { .. } => None,
    }
}

/// Forward Euler for `dX = g(X) dB + b(X) dt` along `driver`.
///
/// Fails when `g` is declared only Lipschitz, or declared `C^{1+kappa}` with
/// `kappa <= 2/alpha - 1` for a driver of known roughness `alpha`: the pathwise
/// theory does not cover those cases. A `C^{1+kappa}` table is run but flagged
/// as outside the proven regime, since its smoothness is declared, not checked.
pub fn solve_young(
    g: &CoefficientSpec,
    b: Option<&CoefficientSpec>,
    x0: f64,
    driver: &Path,
) -> Result<SolutionPath> {
    check(x0.is_finite(), "x0", x0, "must be finite")?;
    let mut outside = false;
    match g.smoothness() {
        Smoothness::Smooth => {}
        Smoothness::Lipschitz { .. } => {
            return Err(Error::Coefficient(
                "g is declared Lipschitz only; the pathwise equation needs C^{1+kappa}".into(),
            ))
        }
        Smoothness::Holder { kappa, .. } => {
            if let Some(alpha) = driver_alpha(driver.process()) {
                if kappa <= 2.0 / alpha - 1.0 {
                    return Err(Error::Coefficient(format!(
                        "g is C^(1+{kappa}) but the driver needs kappa > {}",
                        2.0 / alpha - 1.0
                    )));
                }
            }
            outside = true;
        }
    }
    let grid = driver.grid();
    let dt = grid.step();
    let v = driver.values();
    let mut values = Vec::with_capacity(v.len());
    let mut x = x0;
    values.push(x);
    for w in v.windows(2) {
        let mut next = x + g.eval(x) * (w[1] - w[0]);
        if let Some(b) = b {
            next += b.eval(x) * dt;
        }
        x = next;
        if !x.is_finite() {
            return Err(Error::DegeneratePath("Euler iterate is not finite"));
        }
        values.push(x);
    }
    Ok(SolutionPath {
        path: Path::new(grid, values, None)?,
        driver: Driver::Young {
            process: driver.process(),
        },
        outside_proven_regime: outside,
    })
}

/// Solves `dY = f(Y) dX + b(Y) dU` for `X = W(U)` by drawing the clock on
/// `grid` and running [`solve_on_clock`]. Draw order matches `sample_tcbm`, so
/// `f = constant(s)`, no drift, gives `y0 + s` times the TCBM path of the same stream.
#[allow(clippy::too_many_arguments)]
pub fn solve_time_changed(
    f: &CoefficientSpec,
    b: Option<&CoefficientSpec>,
    y0: f64,
    beta: f64,
    alpha: f64,
    grid: DyadicGrid,
    cfg: &TimeChangeConfig,
    rng: &mut RngStream,
) -> Result<SolutionPath> {
    let clock = sample_clock_for_grid(beta, alpha, grid, cfg, rng)?;
    solve_on_clock(f, b, y0, beta, alpha, grid, clock, rng)
}

/// Euler-Maruyama on the given clock values (one per grid point).
#[allow(clippy::too_many_arguments)]
pub fn solve_on_clock(
    f: &CoefficientSpec,
    b: Option<&CoefficientSpec>,
    y0: f64,
    beta: f64,
    alpha: f64,
    grid: DyadicGrid,
    clock: TimeChangePath,
    rng: &mut RngStream,
) -> Result<SolutionPath> {
    check(y0.is_finite(), "y0", y0, "must be finite")?;
    if clock.values.len() != grid.len() {
        return Err(Error::LengthMismatch {
            expected: grid.len(),
            found: clock.values.len(),
        });
    }
    let mut values = Vec::with_capacity(grid.len());
    let mut z = y0;
    values.push(z);
    for w in clock.values.windows(2) {
        let du = w[1] - w[0];
        if du < 0.0 {
            return Err(Error::DegeneratePath("clock decreases"));
        }
        if du > 0.0 {
            let mut next = z + f.eval(z) * du.sqrt() * rng.standard_normal();
            if let Some(b) = b {
                next += b.eval(z) * du;
            }
            z = next;
            if !z.is_finite() {
                return Err(Error::DegeneratePath("Euler-Maruyama iterate is not finite"));
            }
        }
        values.push(z);
    }
    Ok(SolutionPath {
        path: Path::new(grid, values, None)?,
        driver: Driver::TimeChanged { beta, alpha, clock },
        outside_proven_regime: false,
    })
}

/// Classifies Young solutions driven by ggBm against time-changed solutions.
///
/// Replica `i` of the first class solves along the ggBm path of stream `i`;
/// replica `i` of the second uses stream `n_per_class + i`, matching
/// [`crate::discriminate::confusion_experiment`].
pub fn solution_singularity_experiment(
    g: &CoefficientSpec,
    f: &CoefficientSpec,
    x0: f64,
    beta: f64,
    alpha: f64,
    setup: &ConfusionSetup,
) -> Result<ConfusionMatrix> {
    check(beta > 0.0 && beta < 1.0, "beta", beta, "must lie in (0, 1)")?;
    let grid = DyadicGrid::new(setup.level)?;
    let ggbm = GgbmSampler::new(beta, alpha, grid)?;
    let tc = setup.time_change;
    run_confusion(
        alpha,
        setup,
        |rng| Ok(solve_young(g, None, x0, &ggbm.sample(rng))?.path),
        |rng| Ok(solve_time_changed(f, None, x0, beta, alpha, grid, &tc, rng)?.path),
    )
}
