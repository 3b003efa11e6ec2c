//! Replica-parallel Monte Carlo driver.
//!
//! Replica `i` always draws from `derive_stream(seed, stream_offset + i)` and
//! results come back in replica order, so any reduction done over the returned
//! vector is bit-identical for every thread count.

use rayon::prelude::*;

use crate::error::{check, Error, Result};
use crate::sampling::{derive_stream, RngStream};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnsembleConfig {
    pub seed: u64,
    pub replicas: usize,
    /// Worker threads; `0` lets the pool pick the number of cores.
    pub threads: usize,
    /// First stream index, so several ensembles under one seed do not overlap.
    pub stream_offset: u64,
}

impl EnsembleConfig {
    pub fn new(seed: u64, replicas: usize, threads: usize) -> Self {
        Self {
            seed,
            replicas,
            threads,
            stream_offset: 0,
        }
    }

    pub fn with_offset(self, stream_offset: u64) -> Self {
        Self {
            stream_offset,
            ..self
        }
    }

    pub fn validate(&self) -> Result<()> {
        check(self.replicas >= 1, "replicas", self.replicas as f64, "must be >= 1")
    }
}

/// Runs `f(rng, i)` for every replica and returns the results in replica order.
/// The first error (in replica order) aborts the ensemble.
pub fn run_ensemble<T, F>(cfg: &EnsembleConfig, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&mut RngStream, usize) -> Result<T> + Sync,
{
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| Error::Io(format!("thread pool: {e}")))?;
    let results: Vec<Result<T>> = pool.install(|| {
        (0..cfg.replicas)
            .into_par_iter()
            .map(|i| {
                let mut rng = derive_stream(cfg.seed, cfg.stream_offset + i as u64);
                f(&mut rng, i)
            })
            .collect()
    });
    results.into_iter().collect()
}

/// Mean and standard error of the mean, summed in the given order.
pub fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, f64::NAN);
    }
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Median of a sample (mean of the two central values for even sizes).
pub fn median(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    let mut v = xs.to_vec();
    v.sort_by(|a, b| a.total_cmp(b));
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thread_count_does_not_change_results() {
        let draw = |rng: &mut RngStream, _: usize| Ok(rng.standard_normal());
        let one = run_ensemble(&EnsembleConfig::new(7, 500, 1), draw).unwrap();
        let four = run_ensemble(&EnsembleConfig::new(7, 500, 4), draw).unwrap();
        assert_eq!(one, four);
        let (m1, _) = mean_and_se(&one);
        let (m4, _) = mean_and_se(&four);
        assert_eq!(m1.to_bits(), m4.to_bits());
    }

    #[test]
    fn offsets_select_other_streams() {
        let draw = |rng: &mut RngStream, _: usize| Ok(rng.uniform());
        let a = run_ensemble(&EnsembleConfig::new(7, 4, 1), draw).unwrap();
        let b = run_ensemble(&EnsembleConfig::new(7, 4, 1).with_offset(2), draw).unwrap();
        assert_eq!(a[2..], b[..2]);
    }

    #[test]
    fn errors_propagate() {
        let r = run_ensemble(&EnsembleConfig::new(1, 10, 2), |_, i| {
            if i == 3 {
                Err(Error::DegeneratePath("test"))
            } else {
                Ok(i)
            }
        });
        assert!(r.is_err());
        assert!(run_ensemble(&EnsembleConfig::new(1, 0, 1), |_, i| Ok(i)).is_err());
    }

    #[test]
    fn summary_statistics() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
        let (m, se) = mean_and_se(&[1.0, 2.0, 3.0]);
        assert_eq!(m, 2.0);
        assert!((se - (1.0f64 / 3.0).sqrt()).abs() < 1e-15);
    }
}
