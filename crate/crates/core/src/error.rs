use thiserror::Error;

/// Errors raised by the numerical routines, samplers, and path statistics.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {constraint}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },

    #[error("gamma function pole at {0}")]
    Pole(f64),

    #[error("series did not converge within {max_terms} terms at x = {x}")]
    NonConvergence { x: f64, max_terms: usize },

    #[error("argument {x} outside the stable range: cancellation error {estimate:e} exceeds tolerance {tolerance:e}")]
    Range {
        x: f64,
        estimate: f64,
        tolerance: f64,
    },

    #[error("quadrature failed to reach tolerance {tolerance:e} (estimated error {estimate:e})")]
    Quadrature { estimate: f64, tolerance: f64 },

    #[error("covariance matrix is not positive semidefinite ({0})")]
    NotPositiveDefinite(&'static str),

    #[error("operational grid exceeded {cap} steps before covering level {level}")]
    ExtensionBudget { cap: usize, level: f64 },

    #[error("requested level {requested} exceeds path grid level {available}")]
    LevelExceedsGrid { requested: u32, available: u32 },

    #[error("p = {0} < 1 is not supported by the subsequence dynamic program")]
    ExponentBelowOne(f64),

    #[error("variation index undefined: slope s(p) has no sign change across p in [{p_min}, {p_max}]")]
    NoSignChange { p_min: f64, p_max: f64 },

    #[error("degenerate path: {0}")]
    DegeneratePath(&'static str),

    #[error("coefficient precondition violated: {0}")]
    Coefficient(String),

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check(
    ok: bool,
    name: &'static str,
    value: f64,
    constraint: &'static str,
) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            constraint,
        })
    }
}
