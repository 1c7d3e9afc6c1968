use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Snapping tolerance, in index units: an abscissa whose exact index is
/// within this distance of an integer is treated as that grid point.
pub(crate) const INDEX_SNAP: f64 = 1e-9;

/// Uniform abscissa grid on [0, x_max] with `n` cells, i.e. n + 1 points
/// x_k = k * x_max / n. All sampled distribution functions share one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub x_max: f64,
    pub n: usize,
}

impl Grid {
    pub const DEFAULT_N: usize = 1024;
    pub const DEFAULT_X_MAX: f64 = 16.0;

    pub fn new(n: usize, x_max: f64) -> Result<Grid> {
        if n == 0 {
            return Err(Error::Construction("grid needs at least one cell".into()));
        }
        if !(x_max.is_finite() && x_max > 0.0) {
            return Err(Error::Construction(format!(
                "grid x_max must be finite and positive, got {x_max}"
            )));
        }
        Ok(Grid { x_max, n })
    }

    pub fn step(&self) -> f64 {
        self.x_max / self.n as f64
    }

    pub fn abscissa(&self, k: usize) -> f64 {
        debug_assert!(k <= self.n);
        k as f64 * self.x_max / self.n as f64
    }

    /// Index whose stored value a left-continuous step function takes at x:
    /// the smallest k with x <= x_k, after snapping. Requires 0 <= x and
    /// clamps to n at the right edge; the caller handles x beyond the grid.
    pub fn index_at(&self, x: f64) -> usize {
        debug_assert!(x >= 0.0);
        let t = x / self.step();
        let k = (t - INDEX_SNAP).ceil();
        if k <= 0.0 {
            0
        } else {
            (k as usize).min(self.n)
        }
    }

    /// Nearest grid index to x, ties to even, clamped to [0, n].
    pub fn nearest_index(&self, x: f64) -> usize {
        debug_assert!(x >= 0.0);
        let t = (x / self.step()).round_ties_even();
        if t <= 0.0 {
            0
        } else {
            (t as usize).min(self.n)
        }
    }

    /// True when x lies on the grid (within snapping) or beyond its right edge,
    /// so that evaluation loses nothing to discretization.
    pub fn covers_exactly(&self, x: f64) -> bool {
        let t = x / self.step();
        (t - t.round()).abs() <= INDEX_SNAP || x > self.x_max
    }
}

impl Default for Grid {
    fn default() -> Self {
        Grid {
            x_max: Self::DEFAULT_X_MAX,
            n: Self::DEFAULT_N,
        }
    }
}
