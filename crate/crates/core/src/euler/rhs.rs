//! Semi-discrete right-hand sides of the 1D and 2D Euler equations.

use rayon::prelude::*;

use super::flux::{line_fluxes, CharSystem, Euler1D, Euler2DX};
use super::positivity::limit_line_fluxes;
use super::GasModel;
use crate::error::Error;
use crate::grid::{Grid1D, Grid2D, GHOST};
use crate::kernels::SchemeParams;
use crate::problems::boundary::{apply_boundary_1d, apply_boundary_2d, Boundaries, GhostContext};

/// Global Lax–Friedrichs speed of each characteristic field: the largest
/// `|lambda_m|` over the given cells.
pub fn field_alphas<const N: usize, S: CharSystem<N>>(sys: &S, cells: &[[f64; N]]) -> [f64; N] {
    let mut alpha = [0.0f64; N];
    for u in cells {
        for (a, s) in alpha.iter_mut().zip(sys.wave_speeds(u)) {
            *a = a.max(s.abs());
        }
    }
    alpha
}

pub fn field_alphas_1d(padded: &[[f64; 3]], g: &GasModel) -> [f64; 3] {
    field_alphas(&Euler1D(*g), padded)
}

fn as_states<const N: usize>(flat: &[f64]) -> &[[f64; N]] {
    let (chunks, rest) = flat.as_chunks::<N>();
    debug_assert!(rest.is_empty());
    chunks
}

fn check_finite<const N: usize>(out: &[[f64; N]], location: impl Fn(usize) -> String) -> Result<(), Error> {
    match out.iter().position(|u| u.iter().any(|x| !x.is_finite())) {
        Some(k) => Err(Error::NonFinite { location: location(k) }),
        None => Ok(()),
    }
}

/// Options of the Euler right-hand sides.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct EulerOptions {
    /// Add the unit gravity source `(0, 0, rho, rho v)` (2D only).
    pub gravity: bool,
    /// Apply the positivity-preserving flux limiter for forward-Euler stages
    /// of this step size.
    pub positivity_dt: Option<f64>,
}

/// `-(F[j+1/2] - F[j-1/2]) / dx` for every interior cell.
///
/// `padded` holds `n + 2*GHOST` flattened `[rho, m, E]` states; its ghosts are
/// filled here from `bcs` at time `ctx.t`.
#[allow(clippy::too_many_arguments)]
pub fn euler_rhs_1d(
    padded: &mut [f64],
    grid: &Grid1D,
    bcs: &Boundaries,
    ctx: &GhostContext<'_>,
    p: &SchemeParams,
    g: &GasModel,
    opts: EulerOptions,
    out: &mut [f64],
) -> Result<(), Error> {
    let n = grid.n;
    apply_boundary_1d(padded, 3, grid, bcs, ctx);
    let line = as_states::<3>(padded);
    let sys = Euler1D(*g);
    let alpha = field_alphas(&sys, line);
    let mut flux = vec![[0.0; 3]; n + 1];
    let mut scratch = Vec::with_capacity(line.len());
    line_fluxes(&sys, line, &alpha, p, &mut scratch, &mut flux)
        .map_err(|(i, e)| locate(e, format!("interface {i}")))?;
    if let Some(dt) = opts.positivity_dt {
        let a = alpha.iter().fold(0.0f64, |m, &x| m.max(x));
        limit_line_fluxes(&sys, line, a, 2.0 * dt / grid.dx(), &mut flux);
    }
    let inv = 1.0 / grid.dx();
    for j in 0..n {
        for c in 0..3 {
            out[3 * j + c] = -(flux[j + 1][c] - flux[j][c]) * inv;
        }
    }
    check_finite(as_states::<3>(out), |j| format!("cell {j}"))
}

fn locate(e: Error, location: String) -> Error {
    match e {
        Error::Inadmissible { detail, .. } => Error::Inadmissible { location, detail },
        Error::DegenerateInput(d) => Error::DegenerateInput(format!("{d} at {location}")),
        other => other,
    }
}

/// Pointwise source of the Rayleigh–Taylor setup.
#[inline]
pub fn rt_gravity_source(s: &[f64; 4]) -> [f64; 4] {
    [0.0, 0.0, s[0], s[2]]
}

#[inline]
fn swap_xy(u: &[f64; 4]) -> [f64; 4] {
    [u[0], u[2], u[1], u[3]]
}

/// Dimension-by-dimension right-hand side on a padded row-major array of
/// `(nx + 2*GHOST) * (ny + 2*GHOST)` states. Writes `nx * ny` row-major states.
///
/// The y sweep runs the x-direction code on states with exchanged velocity
/// components, so a transposed problem produces the transposed result exactly.
#[allow(clippy::too_many_arguments)]
pub fn euler_rhs_2d(
    padded: &mut [f64],
    grid: &Grid2D,
    bcs: &Boundaries,
    ctx: &GhostContext<'_>,
    p: &SchemeParams,
    g: &GasModel,
    opts: EulerOptions,
    out: &mut [f64],
) -> Result<(), Error> {
    let (nx, ny, px, py) = (grid.nx(), grid.ny(), grid.px(), grid.py());
    apply_boundary_2d(padded, 4, grid, bcs, ctx);
    let cells = as_states::<4>(padded);
    let sys = Euler2DX(*g);

    // Sweep lines: rows for x (interior rows), swapped columns for y.
    let rows: Vec<&[[f64; 4]]> = (GHOST..GHOST + ny).map(|j| &cells[j * px..(j + 1) * px]).collect();
    let cols: Vec<Vec<[f64; 4]>> =
        (GHOST..GHOST + nx).into_par_iter().map(|i| (0..py).map(|j| swap_xy(&cells[j * px + i])).collect()).collect();

    let ax = field_alphas(&sys, cells);
    let mut ay = [0.0f64; 4];
    for u in cells {
        for (a, s) in ay.iter_mut().zip(sys.wave_speeds(&swap_xy(u))) {
            *a = a.max(s.abs());
        }
    }

    let (dx, dy) = (grid.x.dx(), grid.y.dx());
    let smax = |a: &[f64; 4]| a.iter().fold(0.0f64, |m, &x| m.max(x));
    let (sx, sy) = (smax(&ax), smax(&ay));
    // Half-update coefficient 2 dt (sx/dx + sy/dy) / s for a direction with speed s.
    let lam2 = opts.positivity_dt.map(|dt| 2.0 * dt * (sx / dx + sy / dy));
    let sweep = |line: &[[f64; 4]], alpha: &[f64; 4], n: usize| -> Result<Vec<[f64; 4]>, (usize, Error)> {
        let mut flux = vec![[0.0; 4]; n + 1];
        let mut scratch = Vec::with_capacity(line.len());
        line_fluxes(&sys, line, alpha, p, &mut scratch, &mut flux)?;
        let s = smax(alpha);
        if let (Some(l2), true) = (lam2, s > 0.0) {
            limit_line_fluxes(&sys, line, s, l2 / s, &mut flux);
        }
        Ok(flux)
    };

    let fx: Vec<Vec<[f64; 4]>> = rows
        .par_iter()
        .enumerate()
        .map(|(j, row)| sweep(row, &ax, nx).map_err(|(i, e)| locate(e, format!("x-interface {i} of row {j}"))))
        .collect::<Result<_, _>>()?;
    let gy: Vec<Vec<[f64; 4]>> = cols
        .par_iter()
        .enumerate()
        .map(|(i, col)| sweep(col, &ay, ny).map_err(|(j, e)| locate(e, format!("y-interface {j} of column {i}"))))
        .collect::<Result<_, _>>()?;

    let (idx, idy) = (1.0 / dx, 1.0 / dy);
    let out_states = out.as_chunks_mut::<4>().0;
    out_states.par_chunks_mut(nx).enumerate().for_each(|(j, row)| {
        for (i, o) in row.iter_mut().enumerate() {
            let fxl = &fx[j][i];
            let fxr = &fx[j][i + 1];
            let gyl = swap_xy(&gy[i][j]);
            let gyr = swap_xy(&gy[i][j + 1]);
            for c in 0..4 {
                o[c] = -(fxr[c] - fxl[c]) * idx + -(gyr[c] - gyl[c]) * idy;
            }
            if opts.gravity {
                let s = rt_gravity_source(&cells[grid.padded(i, j)]);
                for c in 0..4 {
                    o[c] += s[c];
                }
            }
        }
    });
    check_finite(as_states::<4>(out), |k| format!("cell ({}, {})", k % nx, k / nx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::Variant;
    use crate::problems::boundary::BoundaryCondition;

    #[test]
    fn gravity_source() {
        assert_eq!(rt_gravity_source(&[2.0, 0.0, 0.0, 5.0]), [0.0, 0.0, 2.0, 0.0]);
        assert_eq!(rt_gravity_source(&[1.0, 0.3, -0.1, 5.0]), [0.0, 0.0, 1.0, -0.1]);
    }

    #[test]
    fn uniform_state_has_zero_rhs() {
        let g = GasModel::AIR;
        let grid = Grid1D::new(12, 0.0, 1.0).unwrap();
        let u = [1.0, 0.3, 2.6];
        let mut padded: Vec<f64> = std::iter::repeat_n(u, 18).flatten().collect();
        let mut out = vec![1.0; 36];
        let bcs = Boundaries::all(BoundaryCondition::Periodic);
        euler_rhs_1d(
            &mut padded,
            &grid,
            &bcs,
            &GhostContext::at(0.0),
            &SchemeParams::new(Variant::Mp),
            &g,
            EulerOptions::default(),
            &mut out,
        )
        .unwrap();
        assert!(out.iter().all(|x| x.abs() < 1e-12), "{out:?}");

        let grid2 = Grid2D::new(8, 7, [0.0, 1.0, 0.0, 1.0]).unwrap();
        let u2 = [1.0, 0.3, -0.2, 2.6];
        let mut padded: Vec<f64> = std::iter::repeat_n(u2, 14 * 13).flatten().collect();
        let mut out = vec![1.0; 8 * 7 * 4];
        euler_rhs_2d(
            &mut padded,
            &grid2,
            &bcs,
            &GhostContext::at(0.0),
            &SchemeParams::new(Variant::Js),
            &g,
            EulerOptions::default(),
            &mut out,
        )
        .unwrap();
        assert!(out.iter().all(|x| x.abs() < 1e-12));
    }

    #[test]
    fn negative_pressure_is_located() {
        let g = GasModel::AIR;
        let grid = Grid1D::new(8, 0.0, 1.0).unwrap();
        let mut padded: Vec<f64> = std::iter::repeat_n([1.0, 0.0, 2.5], 14).flatten().collect();
        padded[3 * 7 + 2] = -1.0;
        let mut out = vec![0.0; 24];
        let err = euler_rhs_1d(
            &mut padded,
            &grid,
            &Boundaries::all(BoundaryCondition::Transmissive),
            &GhostContext::at(0.0),
            &SchemeParams::new(Variant::Js),
            &g,
            EulerOptions::default(),
            &mut out,
        )
        .unwrap_err();
        assert!(err.to_string().contains("interface"), "{err}");
    }
}
