//! Compressible Euler equations for an ideal polytropic gas.
//!
//! States are stored as plain arrays in conservative variables:
//! `[rho, rho*u, E]` in one dimension and `[rho, rho*u, rho*v, E]` in two.
//! The named structs below are the public, self-describing form of the same
//! data.

mod eigen;
mod flux;
mod positivity;
mod rhs;

pub use eigen::{eigensystem_1d, eigensystem_2d, roe_average_1d, roe_average_2d, Axis, EigenSystem, RoeAverage};
pub use flux::{char_interface_flux, line_fluxes, CharSystem, Euler1D, Euler2DX};
pub use positivity::limit_line_fluxes;
pub use rhs::{euler_rhs_1d, euler_rhs_2d, field_alphas_1d, rt_gravity_source, EulerOptions};

use serde::{Deserialize, Serialize};

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GasModel {
    pub gamma: f64,
}

impl GasModel {
    pub const AIR: GasModel = GasModel { gamma: 1.4 };
    pub const MONATOMIC: GasModel = GasModel { gamma: 5.0 / 3.0 };

    pub fn new(gamma: f64) -> Result<Self, Error> {
        if !(gamma > 1.0) {
            return Err(Error::Config(format!("gamma must exceed 1, got {gamma}")));
        }
        Ok(Self { gamma })
    }

    #[inline]
    pub fn pressure_1d(&self, u: &[f64; 3]) -> f64 {
        (self.gamma - 1.0) * (u[2] - 0.5 * u[1] * u[1] / u[0])
    }

    #[inline]
    pub fn pressure_2d(&self, u: &[f64; 4]) -> f64 {
        (self.gamma - 1.0) * (u[3] - 0.5 * (u[1] * u[1] + u[2] * u[2]) / u[0])
    }

    #[inline]
    pub fn sound_speed(&self, rho: f64, p: f64) -> f64 {
        (self.gamma * p / rho).sqrt()
    }

    #[inline]
    pub fn flux_1d(&self, u: &[f64; 3]) -> [f64; 3] {
        let vel = u[1] / u[0];
        let p = self.pressure_1d(u);
        [u[1], u[1] * vel + p, vel * (u[2] + p)]
    }

    /// x-direction flux `F(U)`.
    #[inline]
    pub fn flux_2d_x(&self, u: &[f64; 4]) -> [f64; 4] {
        let vx = u[1] / u[0];
        let p = self.pressure_2d(u);
        [u[1], u[1] * vx + p, u[2] * vx, vx * (u[3] + p)]
    }

    /// y-direction flux `G(U)`.
    #[inline]
    pub fn flux_2d_y(&self, u: &[f64; 4]) -> [f64; 4] {
        let vy = u[2] / u[0];
        let p = self.pressure_2d(u);
        [u[2], u[1] * vy, u[2] * vy + p, vy * (u[3] + p)]
    }
}

impl Default for GasModel {
    fn default() -> Self {
        Self::AIR
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Primitive1D {
    pub rho: f64,
    pub u: f64,
    pub p: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Conserved1D {
    pub rho: f64,
    pub mom: f64,
    pub e: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Primitive2D {
    pub rho: f64,
    pub u: f64,
    pub v: f64,
    pub p: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Conserved2D {
    pub rho: f64,
    pub momx: f64,
    pub momy: f64,
    pub e: f64,
}

impl Primitive1D {
    pub fn new(rho: f64, u: f64, p: f64) -> Self {
        Self { rho, u, p }
    }

    pub fn check(&self) -> Result<(), Error> {
        check_positive(self.rho, self.p, "primitive state")
    }
}

impl Primitive2D {
    pub fn new(rho: f64, u: f64, v: f64, p: f64) -> Self {
        Self { rho, u, v, p }
    }
}

impl Conserved1D {
    pub fn to_array(self) -> [f64; 3] {
        [self.rho, self.mom, self.e]
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Self { rho: a[0], mom: a[1], e: a[2] }
    }
}

impl Conserved2D {
    pub fn to_array(self) -> [f64; 4] {
        [self.rho, self.momx, self.momy, self.e]
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Self { rho: a[0], momx: a[1], momy: a[2], e: a[3] }
    }
}

fn check_positive(rho: f64, p: f64, what: &str) -> Result<(), Error> {
    if rho > 0.0 && p > 0.0 && rho.is_finite() && p.is_finite() {
        Ok(())
    } else {
        Err(Error::Inadmissible { location: what.to_string(), detail: format!("rho = {rho}, p = {p}") })
    }
}

pub fn prim_to_cons(w: &Primitive1D, g: &GasModel) -> Result<Conserved1D, Error> {
    w.check()?;
    Ok(Conserved1D { rho: w.rho, mom: w.rho * w.u, e: w.p / (g.gamma - 1.0) + 0.5 * w.rho * w.u * w.u })
}

pub fn cons_to_prim(u: &Conserved1D, g: &GasModel) -> Result<Primitive1D, Error> {
    let p = g.pressure_1d(&u.to_array());
    check_positive(u.rho, p, "conserved state")?;
    Ok(Primitive1D { rho: u.rho, u: u.mom / u.rho, p })
}

pub fn prim_to_cons_2d(w: &Primitive2D, g: &GasModel) -> Result<Conserved2D, Error> {
    check_positive(w.rho, w.p, "primitive state")?;
    Ok(Conserved2D {
        rho: w.rho,
        momx: w.rho * w.u,
        momy: w.rho * w.v,
        e: w.p / (g.gamma - 1.0) + 0.5 * w.rho * (w.u * w.u + w.v * w.v),
    })
}

pub fn cons_to_prim_2d(u: &Conserved2D, g: &GasModel) -> Result<Primitive2D, Error> {
    let p = g.pressure_2d(&u.to_array());
    check_positive(u.rho, p, "conserved state")?;
    Ok(Primitive2D { rho: u.rho, u: u.momx / u.rho, v: u.momy / u.rho, p })
}

/// Checks `rho > 0` and `p > 0` for every cell of a flat 1D state array.
pub fn check_admissible_1d(states: &[[f64; 3]], g: &GasModel) -> Result<(), Error> {
    for (j, u) in states.iter().enumerate() {
        let p = g.pressure_1d(u);
        if !(u[0] > 0.0 && p > 0.0 && p.is_finite() && u[0].is_finite()) {
            return Err(Error::Inadmissible {
                location: format!("cell {j}"),
                detail: format!("rho = {}, p = {p}", u[0]),
            });
        }
    }
    Ok(())
}

/// Checks `rho > 0` and `p > 0` for every cell of a row-major `nx * ny` array.
pub fn check_admissible_2d(states: &[[f64; 4]], nx: usize, g: &GasModel) -> Result<(), Error> {
    for (k, u) in states.iter().enumerate() {
        let p = g.pressure_2d(u);
        if !(u[0] > 0.0 && p > 0.0 && p.is_finite() && u[0].is_finite()) {
            return Err(Error::Inadmissible {
                location: format!("cell ({}, {})", k % nx, k / nx),
                detail: format!("rho = {}, p = {p}", u[0]),
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conversions() {
        let g = GasModel::AIR;
        let u = prim_to_cons(&Primitive1D::new(1.0, 0.0, 1.0), &g).unwrap();
        assert!((u.e - 2.5).abs() < 1e-15);
        let u = prim_to_cons(&Primitive1D::new(1.0, 1.0, 1.0), &g).unwrap();
        assert_eq!(u.mom, 1.0);
        assert!((u.e - 3.0).abs() < 1e-15);
        let w = cons_to_prim(&u, &g).unwrap();
        assert!((w.p - 1.0).abs() < 1e-14 && (w.u - 1.0).abs() < 1e-14);
    }

    #[test]
    fn inadmissible_states_are_rejected() {
        let g = GasModel::AIR;
        assert!(prim_to_cons(&Primitive1D::new(-1.0, 0.0, 1.0), &g).is_err());
        assert!(prim_to_cons(&Primitive1D::new(1.0, 0.0, 0.0), &g).is_err());
        let bad = Conserved1D { rho: 1.0, mom: 2.0, e: 1.0 };
        assert!(cons_to_prim(&bad, &g).is_err());
        assert!(check_admissible_1d(&[[1.0, 0.0, 2.5], bad.to_array()], &g)
            .unwrap_err()
            .to_string()
            .contains("cell 1"));
        assert!(GasModel::new(1.0).is_err());
    }

    #[test]
    fn flux_directions_agree_under_axis_swap() {
        let g = GasModel::AIR;
        let u = [1.3, 0.4, -0.7, 3.1];
        let swapped = [u[0], u[2], u[1], u[3]];
        let fy = g.flux_2d_y(&u);
        let fx = g.flux_2d_x(&swapped);
        assert_eq!(fy, [fx[0], fx[2], fx[1], fx[3]]);
    }
}
