use crate::error::{check, Error, Result};

/// Largest supported dyadic level (2^24 intervals).
pub const MAX_LEVEL: u32 = 24;

/// Dyadic partition `{i 2^-m : i = 0..2^m}` of `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyadicGrid {
    level: u32,
}

impl DyadicGrid {
    pub fn new(level: u32) -> Result<Self> {
        check(
            (1..=MAX_LEVEL).contains(&level),
            "level",
            level as f64,
            "must lie in 1..=24",
        )?;
        Ok(Self { level })
    }

    /// Grid whose point count is `len = 2^m + 1`.
    pub fn from_len(len: usize) -> Result<Self> {
        let intervals = len.saturating_sub(1);
        if intervals < 2 || !intervals.is_power_of_two() {
            return Err(Error::Parse(format!(
                "{len} points do not form a dyadic grid (need 2^m + 1)"
            )));
        }
        Self::new(intervals.trailing_zeros())
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn intervals(&self) -> usize {
        1usize << self.level
    }

    pub fn len(&self) -> usize {
        self.intervals() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn step(&self) -> f64 {
        (-(self.level as f64)).exp2()
    }

    pub fn time(&self, i: usize) -> f64 {
        i as f64 * self.step()
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.time(i)).collect()
    }

    /// Index of `t` on this grid, if `t` is a grid point.
    pub fn index_of(&self, t: f64) -> Option<usize> {
        let x = t * self.intervals() as f64;
        let i = x.round();
        if (0.0..=self.intervals() as f64).contains(&i) && (x - i).abs() < 1e-9 {
            Some(i as usize)
        } else {
            None
        }
    }

    /// Stride between consecutive points of the coarser level `m` on this grid.
    pub fn stride_for(&self, m: u32) -> Result<usize> {
        if m > self.level {
            return Err(Error::LevelExceedsGrid {
                requested: m,
                available: self.level,
            });
        }
        Ok(1usize << (self.level - m))
    }
}
