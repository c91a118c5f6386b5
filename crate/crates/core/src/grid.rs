//! Uniform cell-centred grids with a three-cell ghost layer.

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Ghost cells per side: the reach of the five-point stencil at the outermost
/// interface plus the extra cell of the right-biased stencil.
pub const GHOST: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid1D {
    pub n: usize,
    pub x_lo: f64,
    pub x_hi: f64,
}

impl Grid1D {
    pub fn new(n: usize, x_lo: f64, x_hi: f64) -> Result<Self, Error> {
        if n < 6 {
            return Err(Error::Config(format!("grid needs at least 6 cells, got {n}")));
        }
        if !(x_hi > x_lo) {
            return Err(Error::Config(format!("empty domain [{x_lo}, {x_hi}]")));
        }
        Ok(Self { n, x_lo, x_hi })
    }

    pub fn dx(&self) -> f64 {
        (self.x_hi - self.x_lo) / self.n as f64
    }

    /// Centre of cell `j`; negative and `>= n` indices address ghost cells.
    pub fn center(&self, j: isize) -> f64 {
        self.x_lo + (j as f64 + 0.5) * self.dx()
    }

    pub fn centers(&self) -> Vec<f64> {
        (0..self.n as isize).map(|j| self.center(j)).collect()
    }

    pub fn len(&self) -> f64 {
        self.x_hi - self.x_lo
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid2D {
    pub x: Grid1D,
    pub y: Grid1D,
}

impl Grid2D {
    pub fn new(nx: usize, ny: usize, bounds: [f64; 4]) -> Result<Self, Error> {
        Ok(Self { x: Grid1D::new(nx, bounds[0], bounds[1])?, y: Grid1D::new(ny, bounds[2], bounds[3])? })
    }

    pub fn nx(&self) -> usize {
        self.x.n
    }

    pub fn ny(&self) -> usize {
        self.y.n
    }

    /// Padded row length.
    pub fn px(&self) -> usize {
        self.x.n + 2 * GHOST
    }

    pub fn py(&self) -> usize {
        self.y.n + 2 * GHOST
    }

    /// Flat index into a padded array of the interior cell `(i, j)`.
    #[inline]
    pub fn padded(&self, i: usize, j: usize) -> usize {
        (j + GHOST) * self.px() + i + GHOST
    }
}
