//! Argument parsing and subcommand dispatch for the `ggbm` binary.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path as FsPath, PathBuf};

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use ggbm_core::discriminate::{classify, DiscriminatorConfig};
use ggbm_core::ensemble::{run_ensemble, EnsembleConfig};
use ggbm_core::paths::io::{format_f64, load_path, save_path, write_path_csv};
use ggbm_core::paths::{
    count_at, sample_bm, sample_fpp, sample_ftpp, sample_tcbm, DyadicGrid, FbmMethod, FbmSampler,
    GgbmSampler, Path, ProcessSpec, TimeChangeConfig,
};
use ggbm_core::sampling::RngStream;
use ggbm_core::sde::{solve_time_changed, solve_young, CoefficientSpec, SolutionPath};
use ggbm_core::specfun::{
    m_wright_density, m_wright_density_integral, m_wright_moment, mittag_leffler, mittag_leffler_deriv,
    EvalConfig,
};
use ggbm_core::variation::{
    dyadic_max_sums, dyadic_sums_multi, estimate_index, write_profiles_csv, VariationProfile,
};

use crate::config::{default_seed, ExperimentConfig};
use crate::error::CliError;
use crate::experiments::run_experiment;

/// Exit code for failed checks.
pub const EXIT_CHECK_FAILED: i32 = 1;
/// Exit code for usage, configuration and runtime errors.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "ggbm", version, about = "Simulation and checks for generalized grey Brownian motion")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Master seed [default: $GGBM_SEED or 20251016].
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Number of replicas (paths, draws) where a command simulates an ensemble.
    #[arg(long, global = true)]
    replicas: Option<usize>,
    /// Worker threads; results do not depend on this. 0 picks the core count.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output file or directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate special functions.
    Specfun {
        #[command(subcommand)]
        action: SpecfunAction,
    },
    /// Simulate paths and write them as CSV.
    Sample(SampleArgs),
    /// Dyadic p-variation profiles or index estimates of path CSVs.
    Variation(VariationArgs),
    /// Classify path CSVs as ggBm-like or TCBM-like.
    Discriminate(DiscriminateArgs),
    /// Solve an SDE driven by ggBm (Young) or by time-changed Bm.
    Sde(SdeArgs),
    /// Run experiments from configuration files.
    Experiment {
        #[command(subcommand)]
        action: ExperimentAction,
    },
}

#[derive(Debug, Subcommand)]
enum SpecfunAction {
    /// Print one value per `--x`.
    Eval(EvalArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Function {
    /// Mittag-Leffler function `E_beta(x)`.
    Ml,
    /// `k`-th derivative of `E_beta` (set `--order`).
    MlDeriv,
    /// M-Wright density `M_beta(x)`.
    Mwright,
    /// M-Wright moment of order `x`.
    Moment,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long, value_enum, default_value = "ml")]
    function: Function,
    #[arg(long)]
    beta: f64,
    /// Evaluation points; repeat or separate with commas.
    #[arg(long, required = true, value_delimiter = ',', allow_hyphen_values = true)]
    x: Vec<f64>,
    #[arg(long, default_value_t = 1)]
    order: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProcessKind {
    Bm,
    Fbm,
    Ggbm,
    Tcbm,
    Fpp,
    Ftpp,
}

#[derive(Debug, Args)]
struct SampleArgs {
    #[arg(long, value_enum)]
    process: ProcessKind,
    #[arg(long, default_value_t = 0.8)]
    beta: f64,
    #[arg(long, default_value_t = 1.5)]
    alpha: f64,
    #[arg(long, default_value_t = 0.75)]
    hurst: f64,
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    #[arg(long, default_value_t = 10)]
    level: u32,
    /// Operational level of the simulated clock (tcbm, ftpp).
    #[arg(long, default_value_t = 12)]
    operational_level: u32,
}

#[derive(Debug, Args)]
struct VariationArgs {
    /// Exponents; repeat or separate with commas.
    #[arg(long, value_delimiter = ',')]
    p: Vec<f64>,
    /// Level range `a..b` (inclusive) [default: 1..path level].
    #[arg(long)]
    levels: Option<String>,
    /// Sums maximized over sub-partitions of each level instead of full partitions.
    #[arg(long)]
    max: bool,
    /// Estimate the variation index instead of printing profiles.
    #[arg(long)]
    estimate: bool,
    #[arg(long, default_value_t = 1.0)]
    p_min: f64,
    #[arg(long, default_value_t = 3.0)]
    p_max: f64,
    #[arg(long, default_value_t = 0.05)]
    p_step: f64,
    #[arg(required = true)]
    files: Vec<PathBuf>,
}

#[derive(Debug, Args)]
struct DiscriminateArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long, default_value_t = 4)]
    window: u32,
    #[arg(long, default_value_t = 0.14)]
    eps_stable: f64,
    #[arg(long, default_value_t = 0.16)]
    eps_trend: f64,
    #[arg(required = true)]
    files: Vec<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DriverKind {
    /// Pathwise Euler along a ggBm path.
    Ggbm,
    /// Euler-Maruyama on a simulated inverse-stable clock.
    Tcbm,
}

#[derive(Debug, Args)]
struct SdeArgs {
    #[arg(long, value_enum)]
    driver: DriverKind,
    /// Diffusion coefficient: `constant:C`, `linear:C` or `affine:A,B` (A + B x).
    #[arg(long)]
    coefficient: String,
    /// Optional drift, same syntax.
    #[arg(long)]
    drift: Option<String>,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    x0: f64,
    #[arg(long, default_value_t = 0.8)]
    beta: f64,
    #[arg(long, default_value_t = 1.5)]
    alpha: f64,
    #[arg(long, default_value_t = 10)]
    level: u32,
    #[arg(long, default_value_t = 12)]
    operational_level: u32,
}

#[derive(Debug, Subcommand)]
enum ExperimentAction {
    /// Run one experiment; exit code 1 when a check fails.
    Run {
        config: PathBuf,
    },
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cli: Cli) -> anyhow::Result<i32> {
    let g = cli.global;
    match cli.command {
        Command::Specfun {
            action: SpecfunAction::Eval(args),
        } => specfun_eval(&args),
        Command::Sample(args) => sample(&g, &args),
        Command::Variation(args) => variation(&g, &args),
        Command::Discriminate(args) => discriminate(&g, &args),
        Command::Sde(args) => sde(&g, &args),
        Command::Experiment {
            action: ExperimentAction::Run { config },
        } => experiment(&g, &config),
    }
}

fn seed(g: &GlobalArgs) -> anyhow::Result<u64> {
    match g.seed {
        Some(s) => Ok(s),
        None => Ok(default_seed()?),
    }
}

/// Writes `text` to `out` when given, else to stdout.
fn emit(out: Option<&FsPath>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(stdout.flush()?)
        }
    }
}

fn specfun_eval(args: &EvalArgs) -> anyhow::Result<i32> {
    let cfg = EvalConfig::default();
    let mut text = String::new();
    for &x in &args.x {
        let v = match args.function {
            Function::Ml => mittag_leffler(args.beta, x)?,
            Function::MlDeriv => mittag_leffler_deriv(args.beta, x, args.order)?,
            Function::Mwright => match m_wright_density(args.beta, x) {
                Err(ggbm_core::Error::Range { .. }) => m_wright_density_integral(args.beta, x, &cfg)?,
                other => other?,
            },
            Function::Moment => m_wright_moment(args.beta, x)?,
        };
        text.push_str(&format!("{v}\n"));
    }
    emit(None, &text)?;
    Ok(0)
}

fn process_spec(args: &SampleArgs) -> ProcessSpec {
    let (beta, alpha, lambda) = (args.beta, args.alpha, args.lambda);
    match args.process {
        ProcessKind::Bm => ProcessSpec::Bm,
        ProcessKind::Fbm => ProcessSpec::Fbm { hurst: args.hurst },
        ProcessKind::Ggbm => ProcessSpec::Ggbm { beta, alpha },
        ProcessKind::Tcbm => ProcessSpec::Tcbm { beta, alpha },
        ProcessKind::Fpp => ProcessSpec::Fpp { beta, lambda },
        ProcessKind::Ftpp => ProcessSpec::Ftpp { beta, lambda },
    }
}

fn sample_one(
    spec: ProcessSpec,
    grid: DyadicGrid,
    tc: &TimeChangeConfig,
    rng: &mut RngStream,
) -> ggbm_core::Result<Path> {
    match spec {
        ProcessSpec::Bm => Ok(sample_bm(grid, rng)),
        ProcessSpec::Fbm { hurst } => Ok(FbmSampler::new(hurst, grid, FbmMethod::Circulant)?.sample(rng)),
        ProcessSpec::Ggbm { beta, alpha } => Ok(GgbmSampler::new(beta, alpha, grid)?.sample(rng)),
        ProcessSpec::Tcbm { beta, alpha } => sample_tcbm(beta, alpha, grid, tc, rng),
        ProcessSpec::Fpp { beta, lambda } => {
            let events = sample_fpp(beta, lambda, 1.0, rng)?;
            let counts = grid.times().iter().map(|&t| count_at(&events, t) as f64).collect();
            Path::new(grid, counts, Some(spec))
        }
        ProcessSpec::Ftpp { beta, lambda } => {
            let counts = sample_ftpp(beta, lambda, &grid.times(), tc, rng)?;
            Path::new(grid, counts.into_iter().map(|c| c as f64).collect(), Some(spec))
        }
    }
}

fn sample(g: &GlobalArgs, args: &SampleArgs) -> anyhow::Result<i32> {
    let spec = process_spec(args);
    spec.validate()?;
    let grid = DyadicGrid::new(args.level)?;
    let tc = TimeChangeConfig {
        operational_level: args.operational_level,
        ..TimeChangeConfig::default()
    };
    tc.validate()?;
    let seed = seed(g)?;
    let replicas = g.replicas.unwrap_or(1);
    let ens = EnsembleConfig::new(seed, replicas, g.threads.unwrap_or(0));
    let paths = run_ensemble(&ens, |rng, _| sample_one(spec, grid, &tc, rng))?;
    match &g.out {
        None => {
            if replicas != 1 {
                bail!("--replicas above 1 needs --out <directory>");
            }
            let mut buf = Vec::new();
            write_path_csv(&paths[0], &mut buf)?;
            emit(None, &String::from_utf8(buf)?)?;
        }
        Some(dir) => {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            for (i, path) in paths.iter().enumerate() {
                let mut extra = BTreeMap::new();
                extra.insert("seed".to_string(), seed.to_string());
                extra.insert("stream".to_string(), i.to_string());
                let file = dir.join(format!("{}_{i:04}.csv", spec.kind()));
                save_path(path, &file, &extra).with_context(|| format!("writing {}", file.display()))?;
            }
        }
    }
    Ok(0)
}

fn parse_levels(spec: Option<&str>, top: u32) -> anyhow::Result<Vec<u32>> {
    let Some(s) = spec else {
        return Ok((1..=top).collect());
    };
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| anyhow!("--levels expects `a..b`, got `{s}`"))?;
    let a: u32 = a.trim().parse().with_context(|| format!("--levels start `{a}`"))?;
    let b: u32 = b.trim().parse().with_context(|| format!("--levels end `{b}`"))?;
    if a < 1 || a > b {
        bail!("--levels needs 1 <= a <= b, got {a}..{b}");
    }
    Ok((a..=b).collect())
}

fn load(file: &FsPath) -> anyhow::Result<Path> {
    Ok(load_path(file).with_context(|| format!("reading {}", file.display()))?.0)
}

fn variation(g: &GlobalArgs, args: &VariationArgs) -> anyhow::Result<i32> {
    let mut text = String::new();
    if args.estimate {
        if !(args.p_step > 0.0 && args.p_min < args.p_max) {
            bail!("--p-min, --p-max, --p-step must give an increasing grid");
        }
        let n = ((args.p_max - args.p_min) / args.p_step).round() as usize;
        let probes: Vec<f64> = (0..=n).map(|k| args.p_min + args.p_step * k as f64).collect();
        text.push_str("file,index\n");
        for file in &args.files {
            let path = load(file)?;
            let levels = parse_levels(args.levels.as_deref(), path.level())?;
            let est = estimate_index(&path, &probes, &levels)?;
            text.push_str(&format!("{},{}\n", file.display(), format_f64(est.v_hat)));
        }
    } else {
        if args.p.is_empty() {
            bail!("give at least one --p, or --estimate");
        }
        for file in &args.files {
            let path = load(file)?;
            let levels = parse_levels(args.levels.as_deref(), path.level())?;
            let profiles: Vec<VariationProfile> = if args.max {
                args.p
                    .iter()
                    .map(|&p| dyadic_max_sums(&path, p, &levels))
                    .collect::<ggbm_core::Result<_>>()?
            } else {
                dyadic_sums_multi(&path, &args.p, &levels)?
            };
            if args.files.len() > 1 {
                text.push_str(&format!("# {}\n", file.display()));
            }
            let mut buf = Vec::new();
            write_profiles_csv(&profiles, &mut buf)?;
            text.push_str(&String::from_utf8(buf)?);
        }
    }
    emit(g.out.as_deref(), &text)?;
    Ok(0)
}

fn discriminate(g: &GlobalArgs, args: &DiscriminateArgs) -> anyhow::Result<i32> {
    let cfg = DiscriminatorConfig {
        window: args.window,
        eps_stable: args.eps_stable,
        eps_trend: args.eps_trend,
    };
    cfg.validate()?;
    let mut text = String::from("file,label,slope_2,slope_2a\n");
    for file in &args.files {
        let v = classify(&load(file)?, args.alpha, &cfg)?;
        text.push_str(&format!(
            "{},{},{},{}\n",
            file.display(),
            v.label,
            format_f64(v.slope_2),
            format_f64(v.slope_2a)
        ));
    }
    emit(g.out.as_deref(), &text)?;
    Ok(0)
}

fn parse_coefficient(s: &str) -> anyhow::Result<CoefficientSpec> {
    let (kind, rest) = s
        .split_once(':')
        .ok_or_else(|| anyhow!("coefficient `{s}`: expected `kind:value`"))?;
    let nums: Vec<f64> = rest
        .split(',')
        .map(|v| v.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .with_context(|| format!("coefficient `{s}`"))?;
    match (kind, nums.as_slice()) {
        ("constant", [c]) => Ok(CoefficientSpec::constant(*c)),
        ("linear", [c]) => Ok(CoefficientSpec::linear(*c)),
        ("affine", [a, b]) => Ok(CoefficientSpec::affine(*a, *b)),
        _ => bail!("coefficient `{s}`: use constant:C, linear:C or affine:A,B"),
    }
}

fn sde(g: &GlobalArgs, args: &SdeArgs) -> anyhow::Result<i32> {
    let coef = parse_coefficient(&args.coefficient)?;
    let drift = args.drift.as_deref().map(parse_coefficient).transpose()?;
    let grid = DyadicGrid::new(args.level)?;
    let seed = seed(g)?;
    let mut rng = RngStream::new(seed, 0);
    let sol: SolutionPath = match args.driver {
        DriverKind::Ggbm => {
            let driver = GgbmSampler::new(args.beta, args.alpha, grid)?.sample(&mut rng);
            solve_young(&coef, drift.as_ref(), args.x0, &driver)?
        }
        DriverKind::Tcbm => {
            let tc = TimeChangeConfig {
                operational_level: args.operational_level,
                ..TimeChangeConfig::default()
            };
            solve_time_changed(&coef, drift.as_ref(), args.x0, args.beta, args.alpha, grid, &tc, &mut rng)?
        }
    };
    let mut meta = sol.metadata();
    meta.insert("seed".into(), seed.to_string());
    meta.insert("coefficient".into(), coef.describe());
    if let Some(d) = &drift {
        meta.insert("drift".into(), d.describe());
    }
    match &g.out {
        Some(file) => save_path(&sol.path, file, &meta).with_context(|| format!("writing {}", file.display()))?,
        None => {
            let mut buf = Vec::new();
            write_path_csv(&sol.path, &mut buf)?;
            emit(None, &String::from_utf8(buf)?)?;
        }
    }
    Ok(0)
}

fn experiment(g: &GlobalArgs, config: &FsPath) -> anyhow::Result<i32> {
    let mut cfg = ExperimentConfig::from_file(config)?;
    if let Some(s) = g.seed {
        cfg.seed = s;
    }
    if let Some(r) = g.replicas {
        cfg.replicas = r;
    }
    if let Some(t) = g.threads {
        cfg.threads = t;
    }
    if let Some(o) = &g.out {
        cfg.out = Some(o.clone());
    }
    cfg.validate()?;
    let out_dir = cfg
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from("results").join(cfg.kind.as_str()));
    let output = run_experiment(&cfg)?;
    output.write_to(&out_dir).map_err(|e: CliError| anyhow!(e))?;
    emit(None, &output.report.to_markdown())?;
    Ok(if output.report.all_pass() { 0 } else { EXIT_CHECK_FAILED })
}
