//! Scalar conservation laws: flux models, Lax–Friedrichs splitting and the
//! semi-discrete right-hand side.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::grid::{Grid1D, GHOST};
use crate::kernels::{reconstruct_minus, reconstruct_plus, SchemeParams, StencilWindow};
use crate::problems::boundary::{apply_boundary_1d, Boundaries, GhostContext};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FluxModel {
    LinearAdvection { speed: f64 },
    Burgers,
}

impl FluxModel {
    #[inline]
    pub fn flux(&self, u: f64) -> f64 {
        match *self {
            FluxModel::LinearAdvection { speed } => speed * u,
            FluxModel::Burgers => 0.5 * u * u,
        }
    }

    /// `|f'(u)|`.
    #[inline]
    pub fn wave_speed(&self, u: f64) -> f64 {
        match *self {
            FluxModel::LinearAdvection { speed } => speed.abs(),
            FluxModel::Burgers => u.abs(),
        }
    }
}

/// Cell values with a ghost layer of width [`GHOST`] on each side.
#[derive(Debug, Clone, PartialEq)]
pub struct Field1D {
    pub grid: Grid1D,
    data: Vec<f64>,
}

impl Field1D {
    pub fn zeros(grid: Grid1D) -> Self {
        Self { grid, data: vec![0.0; grid.n + 2 * GHOST] }
    }

    pub fn from_values(grid: Grid1D, values: &[f64]) -> Result<Self, Error> {
        if values.len() != grid.n {
            return Err(Error::LengthMismatch(values.len(), grid.n));
        }
        let mut f = Self::zeros(grid);
        f.values_mut().copy_from_slice(values);
        Ok(f)
    }

    pub fn from_fn(grid: Grid1D, u0: impl Fn(f64) -> f64) -> Self {
        let mut f = Self::zeros(grid);
        for (v, x) in f.values_mut().iter_mut().zip(grid.centers()) {
            *v = u0(x);
        }
        f
    }

    pub fn values(&self) -> &[f64] {
        &self.data[GHOST..GHOST + self.grid.n]
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        let n = self.grid.n;
        &mut self.data[GHOST..GHOST + n]
    }

    /// Interior and ghost cells.
    pub fn padded(&self) -> &[f64] {
        &self.data
    }

    pub fn padded_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn fill_ghosts(&mut self, bcs: &Boundaries, ctx: &GhostContext<'_>) {
        let grid = self.grid;
        apply_boundary_1d(&mut self.data, 1, &grid, bcs, ctx);
    }
}

/// Lax–Friedrichs splitting `f(u) = f+(u) + f-(u)` with `f± = (f(u) ± alpha u)/2`.
pub fn split_lf(u: f64, m: &FluxModel, alpha: f64) -> Result<(f64, f64), Error> {
    if alpha < m.wave_speed(u) {
        return Err(Error::Precondition(format!(
            "splitting speed {alpha} is below the wave speed {} at u = {u}",
            m.wave_speed(u)
        )));
    }
    let f = m.flux(u);
    Ok((0.5 * (f + alpha * u), 0.5 * (f - alpha * u)))
}

/// Largest wave speed over all cells of a padded field, ghosts included.
pub fn max_wave_speed(f: &Field1D, m: &FluxModel) -> f64 {
    f.padded().iter().map(|&u| m.wave_speed(u)).fold(0.0, f64::max)
}

/// Semi-discrete operator `-(f[j+1/2] - f[j-1/2]) / dx` on a padded slice.
///
/// Fills the ghosts of `padded` from `bcs`, then writes `n` values to `out`.
pub fn scalar_rhs_padded(
    padded: &mut [f64],
    grid: &Grid1D,
    m: &FluxModel,
    p: &SchemeParams,
    bcs: &Boundaries,
    ctx: &GhostContext<'_>,
    out: &mut [f64],
) -> Result<(), Error> {
    let n = grid.n;
    apply_boundary_1d(padded, 1, grid, bcs, ctx);
    let alpha = padded.iter().map(|&u| m.wave_speed(u)).fold(0.0, f64::max);
    let fp: Vec<f64> = padded.iter().map(|&u| 0.5 * (m.flux(u) + alpha * u)).collect();
    let fm: Vec<f64> = padded.iter().map(|&u| 0.5 * (m.flux(u) - alpha * u)).collect();
    let dx = grid.dx();
    let mut flux = vec![0.0; n + 1];
    for (i, fh) in flux.iter_mut().enumerate() {
        // Interface between padded cells i + 2 and i + 3.
        let plus = StencilWindow::new(fp[i..i + 5].try_into().expect("five"), dx);
        let minus = StencilWindow::new(fm[i + 1..i + 6].try_into().expect("five"), dx);
        *fh = reconstruct_plus(&plus, p) + reconstruct_minus(&minus, p);
    }
    let inv = 1.0 / dx;
    for j in 0..n {
        out[j] = -(flux[j + 1] - flux[j]) * inv;
    }
    match out[..n].iter().position(|v| !v.is_finite()) {
        Some(j) => Err(Error::NonFinite { location: format!("cell {j}") }),
        None => Ok(()),
    }
}

/// Right-hand side of a scalar field; see [`scalar_rhs_padded`].
pub fn scalar_rhs(f: &Field1D, m: &FluxModel, p: &SchemeParams, bcs: &Boundaries) -> Result<Field1D, Error> {
    let mut work = f.clone();
    let mut out = Field1D::zeros(f.grid);
    let grid = f.grid;
    scalar_rhs_padded(work.padded_mut(), &grid, m, p, bcs, &GhostContext::at(0.0), out.values_mut())?;
    Ok(out)
}
