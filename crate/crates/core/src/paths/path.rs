use super::{DyadicGrid, ProcessSpec};
use crate::error::{Error, Result};

/// Values of a process on a dyadic grid of `[0, 1]`.
///
/// Paths produced by the samplers carry their [`ProcessSpec`] and start at 0.
/// Paths read from external files may have no process tag.
#[derive(Debug, Clone, PartialEq)]
pub struct Path {
    grid: DyadicGrid,
    values: Vec<f64>,
    process: Option<ProcessSpec>,
}

impl Path {
    pub fn new(grid: DyadicGrid, values: Vec<f64>, process: Option<ProcessSpec>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                found: values.len(),
            });
        }
        if process.is_some() && values[0] != 0.0 {
            return Err(Error::InvalidParameter {
                name: "values[0]",
                value: values[0],
                constraint: "process paths must start at 0",
            });
        }
        if let Some(spec) = process {
            spec.validate()?;
        }
        Ok(Self {
            grid,
            values,
            process,
        })
    }

    pub fn grid(&self) -> DyadicGrid {
        self.grid
    }

    pub fn level(&self) -> u32 {
        self.grid.level()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn process(&self) -> Option<ProcessSpec> {
        self.process
    }

    pub fn with_process(mut self, process: Option<ProcessSpec>) -> Self {
        self.process = process;
        self
    }

    /// Value at grid time `t`, if `t` is a grid point.
    pub fn value_at(&self, t: f64) -> Option<f64> {
        self.grid.index_of(t).map(|i| self.values[i])
    }

    pub fn terminal(&self) -> f64 {
        *self.values.last().expect("grid has at least three points")
    }

    /// Restriction to the coarser level `m`.
    pub fn subsample(&self, m: u32) -> Result<Path> {
        let stride = self.grid.stride_for(m)?;
        let values = self.values.iter().step_by(stride).copied().collect();
        Ok(Path {
            grid: DyadicGrid::new(m)?,
            values,
            process: self.process,
        })
    }

    /// Increments `X(t_{i+1}) - X(t_i)` over the level-`m` partition.
    pub fn increments(&self, m: u32) -> Result<impl Iterator<Item = f64> + '_> {
        let stride = self.grid.stride_for(m)?;
        let n = 1usize << m;
        Ok((0..n).map(move |i| self.values[(i + 1) * stride] - self.values[i * stride]))
    }
}
