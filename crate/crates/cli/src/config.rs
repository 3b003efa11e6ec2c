//! Flat `key = value` experiment files.
//!
//! One experiment per file. Blank lines and lines starting with `#` or `;`
//! are ignored. Keys a given experiment does not use are accepted but leave no
//! trace in its results; unknown keys are errors. `tol.<check>` overrides the
//! tolerance column of the named report row.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{CliError, CliResult};

/// Environment variable that replaces the default seed.
pub const SEED_ENV: &str = "GGBM_SEED";
pub const DEFAULT_SEED: u64 = 20251016;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    Specfun,
    Samplers,
    GgbmLaw,
    Onedim,
    Variation,
    Index,
    Singularity,
    Fpp,
    Sde,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 9] = [
        Self::Specfun,
        Self::Samplers,
        Self::GgbmLaw,
        Self::Onedim,
        Self::Variation,
        Self::Index,
        Self::Singularity,
        Self::Fpp,
        Self::Sde,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Specfun => "specfun",
            Self::Samplers => "samplers",
            Self::GgbmLaw => "ggbm-law",
            Self::Onedim => "onedim",
            Self::Variation => "variation",
            Self::Index => "index",
            Self::Singularity => "singularity",
            Self::Fpp => "fpp",
            Self::Sde => "sde",
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExperimentKind {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| CliError::config("kind", format!("unknown experiment kind `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    /// Several values only for `samplers`, which repeats its checks per order.
    pub betas: Vec<f64>,
    pub alpha: f64,
    pub hurst: f64,
    pub lambda: f64,
    /// Evaluation time of the counting-process checks.
    pub time: f64,
    pub level: u32,
    /// Lowest level of level sweeps (`singularity`, `sde`); `level` is the highest.
    pub min_level: u32,
    pub seed: u64,
    /// Main ensemble size; paths per class for `singularity`.
    pub replicas: usize,
    /// Paths per class of the solution-level classification in `sde`.
    pub n_per_class: usize,
    /// Driver paths of the Young convergence check in `sde`.
    pub paths: usize,
    pub threads: usize,
    pub out: Option<PathBuf>,
    /// Operational level of simulated clocks.
    pub operational_level: u32,
    /// Coefficient `c` of `LINEAR(c)` in `sde`.
    pub coefficient: f64,
    pub x0: f64,
    pub window: u32,
    pub eps_stable: f64,
    pub eps_trend: f64,
    pub tolerances: BTreeMap<String, f64>,
}

/// `GGBM_SEED` if set and valid, else the built-in default.
pub fn default_seed() -> CliResult<u64> {
    match std::env::var(SEED_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::config(SEED_ENV, format!("`{s}` is not an unsigned integer"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

impl ExperimentConfig {
    /// Sizes and parameters of the reference run of `kind`.
    pub fn defaults(kind: ExperimentKind, seed: u64) -> Self {
        use ExperimentKind::*;
        let (betas, level, replicas) = match kind {
            Specfun => (vec![0.8], 10, 1),
            Samplers => (vec![0.3, 0.6, 0.8], 10, 1_000_000),
            GgbmLaw | Onedim => (vec![0.8], 10, 100_000),
            Variation | Index => (vec![0.8], 14, 100),
            Singularity => (vec![0.8], 14, 200),
            Fpp => (vec![0.6], 10, 1_000_000),
            Sde => (vec![0.8], 14, 100_000),
        };
        Self {
            kind,
            betas,
            alpha: 1.5,
            hurst: 0.75,
            lambda: 1.0,
            time: 1.0,
            level,
            min_level: 10,
            seed,
            replicas,
            n_per_class: 100,
            paths: 20,
            threads: 0,
            out: None,
            // the one-dimensional checks resolve the clock well below their standard errors here
            operational_level: if kind == Onedim { 10 } else { 12 },
            coefficient: 0.5,
            x0: 1.0,
            window: 4,
            eps_stable: 0.14,
            eps_trend: 0.16,
            tolerances: BTreeMap::new(),
        }
    }

    pub fn from_file(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config("config", format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let mut pairs = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with(';') {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(CliError::config(
                    "config",
                    format!("line {}: expected `key = value`", lineno + 1),
                ));
            };
            pairs.push((k.trim().to_string(), v.trim().to_string()));
        }
        let kind = pairs
            .iter()
            .find(|(k, _)| k == "kind")
            .ok_or_else(|| CliError::config("kind", "missing"))?
            .1
            .parse()?;
        let mut cfg = Self::defaults(kind, default_seed()?);
        let mut seen = BTreeMap::new();
        for (k, v) in pairs {
            if seen.insert(k.clone(), ()).is_some() {
                return Err(CliError::config(&k, "given twice"));
            }
            cfg.set(&k, &v)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn set(&mut self, key: &str, value: &str) -> CliResult<()> {
        match key {
            "kind" => {}
            "beta" => {
                self.betas = value
                    .split(',')
                    .map(|s| num(key, s.trim()))
                    .collect::<CliResult<_>>()?;
            }
            "alpha" => self.alpha = num(key, value)?,
            "hurst" => self.hurst = num(key, value)?,
            "lambda" => self.lambda = num(key, value)?,
            "time" => self.time = num(key, value)?,
            "level" => self.level = num(key, value)?,
            "min_level" => self.min_level = num(key, value)?,
            "seed" => self.seed = num(key, value)?,
            "replicas" => self.replicas = num(key, value)?,
            "n_per_class" => self.n_per_class = num(key, value)?,
            "paths" => self.paths = num(key, value)?,
            "threads" => self.threads = num(key, value)?,
            "out" => self.out = Some(PathBuf::from(value)),
            "operational_level" => self.operational_level = num(key, value)?,
            "coefficient" => self.coefficient = num(key, value)?,
            "x0" => self.x0 = num(key, value)?,
            "window" => self.window = num(key, value)?,
            "eps_stable" => self.eps_stable = num(key, value)?,
            "eps_trend" => self.eps_trend = num(key, value)?,
            _ => match key.strip_prefix("tol.") {
                Some(check) if !check.is_empty() => {
                    self.tolerances.insert(check.to_string(), num(key, value)?);
                }
                _ => return Err(CliError::config(key, "unknown key")),
            },
        }
        Ok(())
    }

    pub fn beta(&self) -> f64 {
        self.betas[0]
    }

    pub fn validate(&self) -> CliResult<()> {
        let bad = |field: &str, msg: &str| Err(CliError::config(field, msg));
        if self.betas.is_empty() {
            return bad("beta", "needs at least one value");
        }
        if self.kind != ExperimentKind::Samplers && self.betas.len() != 1 {
            return bad("beta", "a list of orders is only accepted by `samplers`");
        }
        if self.betas.iter().any(|&b| !(b > 0.0 && b < 1.0)) {
            return bad("beta", "must lie in (0, 1)");
        }
        let alpha_ok = match self.kind {
            ExperimentKind::Singularity | ExperimentKind::Sde => self.alpha > 1.0 && self.alpha < 2.0,
            _ => self.alpha > 0.0 && self.alpha < 2.0,
        };
        if !alpha_ok {
            return bad("alpha", "must lie in (0, 2), and in (1, 2) for singularity and sde");
        }
        if !(self.hurst > 0.0 && self.hurst < 1.0) {
            return bad("hurst", "must lie in (0, 1)");
        }
        if !(self.lambda > 0.0 && self.lambda.is_finite()) {
            return bad("lambda", "must be finite and > 0");
        }
        if !(self.time > 0.0 && self.time.is_finite()) {
            return bad("time", "must be finite and > 0");
        }
        if !(2..=20).contains(&self.level) {
            return bad("level", "must lie in 2..=20");
        }
        // only the level sweeps read min_level and window
        let sweeps = matches!(self.kind, ExperimentKind::Singularity | ExperimentKind::Sde);
        if sweeps && (self.min_level < 1 || self.min_level > self.level) {
            return bad("min_level", "must lie in 1..=level");
        }
        if self.kind != ExperimentKind::Specfun && self.replicas < 2 {
            return bad("replicas", "must be >= 2");
        }
        if self.n_per_class < 1 {
            return bad("n_per_class", "must be >= 1");
        }
        if self.paths < 1 {
            return bad("paths", "must be >= 1");
        }
        if !(4..=24).contains(&self.operational_level) {
            return bad("operational_level", "must lie in 4..=24");
        }
        if !self.coefficient.is_finite() || self.coefficient == 0.0 {
            return bad("coefficient", "must be finite and nonzero");
        }
        if !(self.x0 > 0.0 && self.x0.is_finite()) {
            return bad("x0", "must be finite and > 0");
        }
        if self.window < 3 || (sweeps && self.window > self.level) {
            return bad("window", "must lie in 3..=level");
        }
        if !(self.eps_stable > 0.0 && self.eps_stable < self.eps_trend) {
            return bad("eps_stable", "must satisfy 0 < eps_stable < eps_trend");
        }
        if self.tolerances.values().any(|t| !(*t >= 0.0)) {
            return bad("tol", "tolerances must be >= 0");
        }
        Ok(())
    }

    /// Settings that determine the numbers, in a fixed order. Thread count and
    /// output directory are left out since they never change results.
    pub fn echo(&self) -> Vec<(String, String)> {
        let betas: Vec<String> = self.betas.iter().map(|b| b.to_string()).collect();
        let mut out = vec![
            ("kind".to_string(), self.kind.to_string()),
            ("seed".to_string(), self.seed.to_string()),
            ("beta".to_string(), betas.join(", ")),
            ("alpha".to_string(), self.alpha.to_string()),
            ("hurst".to_string(), self.hurst.to_string()),
            ("lambda".to_string(), self.lambda.to_string()),
            ("time".to_string(), self.time.to_string()),
            ("level".to_string(), self.level.to_string()),
            ("min_level".to_string(), self.min_level.to_string()),
            ("replicas".to_string(), self.replicas.to_string()),
            ("n_per_class".to_string(), self.n_per_class.to_string()),
            ("paths".to_string(), self.paths.to_string()),
            ("operational_level".to_string(), self.operational_level.to_string()),
            ("coefficient".to_string(), self.coefficient.to_string()),
            ("x0".to_string(), self.x0.to_string()),
            ("window".to_string(), self.window.to_string()),
            ("eps_stable".to_string(), self.eps_stable.to_string()),
            ("eps_trend".to_string(), self.eps_trend.to_string()),
        ];
        for (k, v) in &self.tolerances {
            out.push((format!("tol.{k}"), v.to_string()));
        }
        out
    }
}

fn num<T: FromStr>(key: &str, value: &str) -> CliResult<T> {
    value
        .parse()
        .map_err(|_| CliError::config(key, format!("cannot parse `{value}`")))
}
