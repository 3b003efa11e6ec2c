use std::collections::BTreeMap;
use std::fmt;

use crate::error::{check, Error, Result};

/// Tagged description of a simulated process.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProcessSpec {
    Bm,
    Fbm { hurst: f64 },
    Ggbm { beta: f64, alpha: f64 },
    Tcbm { beta: f64, alpha: f64 },
    Fpp { beta: f64, lambda: f64 },
    Ftpp { beta: f64, lambda: f64 },
}

impl ProcessSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            ProcessSpec::Bm => Ok(()),
            ProcessSpec::Fbm { hurst } => {
                check(hurst > 0.0 && hurst < 1.0, "hurst", hurst, "must lie in (0, 1)")
            }
            ProcessSpec::Ggbm { beta, alpha } => {
                check(beta > 0.0 && beta <= 1.0, "beta", beta, "must lie in (0, 1]")?;
                check(alpha > 0.0 && alpha < 2.0, "alpha", alpha, "must lie in (0, 2)")
            }
            ProcessSpec::Tcbm { beta, alpha } => {
                check(beta > 0.0 && beta < 1.0, "beta", beta, "must lie in (0, 1)")?;
                check(alpha > 0.0 && alpha < 2.0, "alpha", alpha, "must lie in (0, 2)")
            }
            ProcessSpec::Fpp { beta, lambda } | ProcessSpec::Ftpp { beta, lambda } => {
                check(beta > 0.0 && beta <= 1.0, "beta", beta, "must lie in (0, 1]")?;
                check(lambda > 0.0, "lambda", lambda, "must be > 0")
            }
        }
    }

    /// Whether `(beta, alpha)` lie in the regime `0 < beta < 1`, `1 < alpha < 2`
    /// where ggBm and TCBM have distinct variation indices.
    pub fn singularity_admissible(beta: f64, alpha: f64) -> bool {
        beta > 0.0 && beta < 1.0 && alpha > 1.0 && alpha < 2.0
    }

    /// Almost-sure p-variation index of the continuous processes.
    pub fn variation_index(&self) -> Option<f64> {
        match *self {
            ProcessSpec::Bm | ProcessSpec::Tcbm { .. } => Some(2.0),
            ProcessSpec::Fbm { hurst } => Some(1.0 / hurst),
            ProcessSpec::Ggbm { alpha, .. } => Some(2.0 / alpha),
            ProcessSpec::Fpp { .. } | ProcessSpec::Ftpp { .. } => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ProcessSpec::Bm => "bm",
            ProcessSpec::Fbm { .. } => "fbm",
            ProcessSpec::Ggbm { .. } => "ggbm",
            ProcessSpec::Tcbm { .. } => "tcbm",
            ProcessSpec::Fpp { .. } => "fpp",
            ProcessSpec::Ftpp { .. } => "ftpp",
        }
    }

    /// Flat `key -> value` view used by metadata sidecars.
    pub fn to_pairs(&self) -> Vec<(&'static str, String)> {
        let mut out = vec![("process", self.kind().to_string())];
        match *self {
            ProcessSpec::Bm => {}
            ProcessSpec::Fbm { hurst } => out.push(("hurst", hurst.to_string())),
            ProcessSpec::Ggbm { beta, alpha } | ProcessSpec::Tcbm { beta, alpha } => {
                out.push(("beta", beta.to_string()));
                out.push(("alpha", alpha.to_string()));
            }
            ProcessSpec::Fpp { beta, lambda } | ProcessSpec::Ftpp { beta, lambda } => {
                out.push(("beta", beta.to_string()));
                out.push(("lambda", lambda.to_string()));
            }
        }
        out
    }

    pub fn from_pairs(map: &BTreeMap<String, String>) -> Result<Self> {
        let get = |k: &str| -> Result<f64> {
            map.get(k)
                .ok_or_else(|| Error::Parse(format!("missing key `{k}`")))?
                .trim()
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("key `{k}`: {e}")))
        };
        let kind = map
            .get("process")
            .ok_or_else(|| Error::Parse("missing key `process`".into()))?;
        let spec = match kind.trim() {
            "bm" => ProcessSpec::Bm,
            "fbm" => ProcessSpec::Fbm { hurst: get("hurst")? },
            "ggbm" => ProcessSpec::Ggbm {
                beta: get("beta")?,
                alpha: get("alpha")?,
            },
            "tcbm" => ProcessSpec::Tcbm {
                beta: get("beta")?,
                alpha: get("alpha")?,
            },
            "fpp" => ProcessSpec::Fpp {
                beta: get("beta")?,
                lambda: get("lambda")?,
            },
            "ftpp" => ProcessSpec::Ftpp {
                beta: get("beta")?,
                lambda: get("lambda")?,
            },
            other => return Err(Error::Parse(format!("unknown process kind `{other}`"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for ProcessSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ProcessSpec::Bm => write!(f, "Bm"),
            ProcessSpec::Fbm { hurst } => write!(f, "fBm(H={hurst})"),
            ProcessSpec::Ggbm { beta, alpha } => write!(f, "ggBm(beta={beta}, alpha={alpha})"),
            ProcessSpec::Tcbm { beta, alpha } => write!(f, "TCBM(beta={beta}, alpha={alpha})"),
            ProcessSpec::Fpp { beta, lambda } => write!(f, "fPp(beta={beta}, lambda={lambda})"),
            ProcessSpec::Ftpp { beta, lambda } => write!(f, "ftPp(beta={beta}, lambda={lambda})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(ProcessSpec::Fbm { hurst: 1.0 }.validate().is_err());
        assert!(ProcessSpec::Ggbm { beta: 1.0, alpha: 1.5 }.validate().is_ok());
        assert!(ProcessSpec::Tcbm { beta: 1.0, alpha: 1.5 }.validate().is_err());
        assert!(ProcessSpec::Fpp { beta: 0.5, lambda: 0.0 }.validate().is_err());
        assert!(ProcessSpec::singularity_admissible(0.8, 1.5));
        assert!(!ProcessSpec::singularity_admissible(0.8, 1.0));
    }

    #[test]
    fn pairs_roundtrip() {
        for spec in [
            ProcessSpec::Bm,
            ProcessSpec::Fbm { hurst: 0.75 },
            ProcessSpec::Ggbm { beta: 0.8, alpha: 1.5 },
            ProcessSpec::Tcbm { beta: 0.7, alpha: 1.4 },
            ProcessSpec::Ftpp { beta: 0.6, lambda: 2.0 },
        ] {
            let map: BTreeMap<String, String> = spec
                .to_pairs()
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect();
            assert_eq!(ProcessSpec::from_pairs(&map).unwrap(), spec);
        }
    }
}
