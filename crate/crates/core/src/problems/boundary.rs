//! Ghost-cell filling.
//!
//! Fields are stored padded with [`GHOST`] cells on each side. Every boundary
//! condition writes all ghost cells of its side; interior cells are never
//! modified, so filling is idempotent.

use serde::{Deserialize, Serialize};

use crate::grid::{Grid1D, Grid2D, GHOST};

/// Where a Dirichlet boundary takes its ghost values from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum DirichletData {
    /// One fixed state, in the conserved variables of the model.
    Constant(Vec<f64>),
    /// The initial condition evaluated at the ghost-cell centres.
    Initial,
}

/// Double Mach reflection boundary data. On the bottom side it imposes the
/// post-shock state for `x < x_wall` and a reflecting wall beyond; on the top
/// side it follows the exact position of the incident shock.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DmrBoundary {
    pub postshock: [f64; 4],
    pub preshock: [f64; 4],
    pub x_wall: f64,
    /// Speed of the incident shock normal to itself.
    pub shock_speed: f64,
    /// Angle between the shock and the wall.
    pub angle_deg: f64,
}

impl DmrBoundary {
    /// x position of the incident shock at height `y` and time `t`:
    /// `x_wall + y / tan(angle) + shock_speed * t / sin(angle)`.
    pub fn shock_x(&self, y: f64, t: f64) -> f64 {
        let th = self.angle_deg.to_radians();
        self.x_wall + y / th.tan() + self.shock_speed * t / th.sin()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data", rename_all = "snake_case")]
pub enum BoundaryCondition {
    Periodic,
    /// Zero-gradient extrapolation.
    Transmissive,
    /// Mirror image with the normal momentum negated.
    Reflective,
    Dirichlet(DirichletData),
    DmrSpecial(DmrBoundary),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
    Bottom,
    Top,
}

/// Boundary conditions of every side of a domain. `bottom`/`top` are unused in 1D.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Boundaries {
    pub left: BoundaryCondition,
    pub right: BoundaryCondition,
    pub bottom: BoundaryCondition,
    pub top: BoundaryCondition,
}

impl Boundaries {
    pub fn all(bc: BoundaryCondition) -> Self {
        Self { left: bc.clone(), right: bc.clone(), bottom: bc.clone(), top: bc }
    }

    pub fn one_d(left: BoundaryCondition, right: BoundaryCondition) -> Self {
        Self { left, right, bottom: BoundaryCondition::Transmissive, top: BoundaryCondition::Transmissive }
    }
}

/// Evaluates the initial condition at a point, in conserved variables.
pub type InitialFn<'a> = &'a (dyn Fn(f64, f64, &mut [f64]) + Sync);

/// Inputs a ghost fill may need besides the field itself.
#[derive(Clone, Copy)]
pub struct GhostContext<'a> {
    pub t: f64,
    pub initial: Option<InitialFn<'a>>,
}

impl<'a> GhostContext<'a> {
    pub fn at(t: f64) -> Self {
        Self { t, initial: None }
    }
}

/// Fills the ghost cells of one line of cells.
///
/// `cell(k)` maps a padded index `0..n + 2*GHOST` to the offset of that cell's
/// first component in `data`; `pos(k)` gives the ghost-cell centre for data
/// that depends on position. `normal` is the momentum component negated by a
/// reflecting boundary.
#[allow(clippy::too_many_arguments)]
fn fill_line(
    data: &mut [f64],
    ncomp: usize,
    n: usize,
    cell: impl Fn(usize) -> usize,
    pos: impl Fn(usize) -> (f64, f64),
    lo: (&BoundaryCondition, Side),
    hi: (&BoundaryCondition, Side),
    normal: Option<usize>,
    ctx: &GhostContext<'_>,
) {
    let mut buf = vec![0.0; ncomp];
    for (bc, side) in [lo, hi] {
        let upper = matches!(side, Side::Right | Side::Top);
        for g in 0..GHOST {
            // Ghost cell and its mirror/periodic/nearest interior partners.
            let (ghost, mirror, wrap, nearest) = if upper {
                (n + GHOST + g, n + GHOST - 1 - g, GHOST + g, n + GHOST - 1)
            } else {
                (GHOST - 1 - g, GHOST + g, n + GHOST - 1 - g, GHOST)
            };
            match bc {
                BoundaryCondition::Periodic => copy_cell(data, ncomp, cell(wrap), cell(ghost), None),
                BoundaryCondition::Transmissive => copy_cell(data, ncomp, cell(nearest), cell(ghost), None),
                BoundaryCondition::Reflective => copy_cell(data, ncomp, cell(mirror), cell(ghost), normal),
                BoundaryCondition::Dirichlet(DirichletData::Constant(state)) => {
                    let o = cell(ghost);
                    data[o..o + ncomp].copy_from_slice(&state[..ncomp]);
                }
                BoundaryCondition::Dirichlet(DirichletData::Initial) => {
                    let (x, y) = pos(ghost);
                    let f = ctx.initial.expect("Dirichlet(Initial) needs the initial condition");
                    f(x, y, &mut buf);
                    let o = cell(ghost);
                    data[o..o + ncomp].copy_from_slice(&buf);
                }
                BoundaryCondition::DmrSpecial(dmr) => {
                    let (x, y) = pos(ghost);
                    let o = cell(ghost);
                    match side {
                        Side::Top => {
                            let s = if x < dmr.shock_x(y, ctx.t) { &dmr.postshock } else { &dmr.preshock };
                            data[o..o + ncomp].copy_from_slice(&s[..ncomp]);
                        }
                        _ if x < dmr.x_wall => data[o..o + ncomp].copy_from_slice(&dmr.postshock[..ncomp]),
                        _ => copy_cell(data, ncomp, cell(mirror), cell(ghost), normal),
                    }
                }
            }
        }
    }
}

fn copy_cell(data: &mut [f64], ncomp: usize, from: usize, to: usize, negate: Option<usize>) {
    data.copy_within(from..from + ncomp, to);
    if let Some(c) = negate {
        data[to + c] = -data[to + c];
    }
}

/// Fills the ghosts of a padded 1D field with `ncomp` interleaved components.
/// Component 1 is the momentum when `ncomp > 1`.
pub fn apply_boundary_1d(data: &mut [f64], ncomp: usize, grid: &Grid1D, bcs: &Boundaries, ctx: &GhostContext<'_>) {
    let n = grid.n;
    assert_eq!(data.len(), (n + 2 * GHOST) * ncomp);
    let normal = (ncomp > 1).then_some(1);
    fill_line(
        data,
        ncomp,
        n,
        |k| k * ncomp,
        |k| (grid.center(k as isize - GHOST as isize), 0.0),
        (&bcs.left, Side::Left),
        (&bcs.right, Side::Right),
        normal,
        ctx,
    );
}

/// Fills all ghost cells, corners included, of a padded row-major 2D field
/// of `[rho, rho u, rho v, E]`-like states.
pub fn apply_boundary_2d(data: &mut [f64], ncomp: usize, grid: &Grid2D, bcs: &Boundaries, ctx: &GhostContext<'_>) {
    let (px, py) = (grid.px(), grid.py());
    assert_eq!(data.len(), px * py * ncomp);
    let cx = |k: usize| grid.x.center(k as isize - GHOST as isize);
    let cy = |k: usize| grid.y.center(k as isize - GHOST as isize);
    let (nx_normal, ny_normal) = if ncomp == 4 { (Some(1), Some(2)) } else { (None, None) };
    // Columns first (interior i only), then whole rows so corners pick up values.
    for i in GHOST..GHOST + grid.nx() {
        fill_line(
            data,
            ncomp,
            grid.ny(),
            |k| (k * px + i) * ncomp,
            |k| (cx(i), cy(k)),
            (&bcs.bottom, Side::Bottom),
            (&bcs.top, Side::Top),
            ny_normal,
            ctx,
        );
    }
    for j in 0..py {
        fill_line(
            data,
            ncomp,
            grid.nx(),
            |k| (j * px + k) * ncomp,
            |k| (cx(k), cy(j)),
            (&bcs.left, Side::Left),
            (&bcs.right, Side::Right),
            nx_normal,
            ctx,
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn periodic_wraps() {
        let grid = Grid1D::new(8, -1.0, 1.0).unwrap();
        let mut data: Vec<f64> = (0..14).map(|k| k as f64).collect();
        apply_boundary_1d(&mut data, 1, &grid, &Boundaries::all(BoundaryCondition::Periodic), &GhostContext::at(0.0));
        // Interior is padded 3..=10; ghosts 0,1,2 copy 8,9,10 and 11,12,13 copy 3,4,5.
        assert_eq!(&data[..3], &[8.0, 9.0, 10.0]);
        assert_eq!(&data[11..], &[3.0, 4.0, 5.0]);
    }

    #[test]
    fn reflective_negates_normal_momentum() {
        let grid = Grid1D::new(6, 0.0, 1.0).unwrap();
        let mut data = vec![0.0; 12 * 3];
        for k in 3..9 {
            data[k * 3..k * 3 + 3].copy_from_slice(&[k as f64, 0.5 * k as f64, 10.0 + k as f64]);
        }
        let bcs = Boundaries::all(BoundaryCondition::Reflective);
        apply_boundary_1d(&mut data, 3, &grid, &bcs, &GhostContext::at(0.0));
        assert_eq!(&data[2 * 3..3 * 3], &[3.0, -1.5, 13.0]);
        assert_eq!(&data[0..3], &[5.0, -2.5, 15.0]);
        assert_eq!(&data[9 * 3..10 * 3], &[8.0, -4.0, 18.0]);
        let once = data.clone();
        apply_boundary_1d(&mut data, 3, &grid, &bcs, &GhostContext::at(0.0));
        assert_eq!(once, data);
    }

    #[test]
    fn dmr_shock_trace_at_start() {
        let dmr = DmrBoundary {
            postshock: [8.0, 0.0, 0.0, 0.0],
            preshock: [1.4, 0.0, 0.0, 0.0],
            x_wall: 1.0 / 6.0,
            shock_speed: 10.0,
            angle_deg: 60.0,
        };
        let expect = 1.0 / 6.0 + 1.0 / 3f64.sqrt();
        assert!((dmr.shock_x(1.0, 0.0) - expect).abs() < 1e-15);
        assert!((dmr.shock_x(0.0, 0.1) - (1.0 / 6.0 + 20.0 * 0.1 / 3f64.sqrt())).abs() < 1e-14);
    }
}
