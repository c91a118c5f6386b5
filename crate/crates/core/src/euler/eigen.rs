//! Roe averages and the analytic eigenstructure of the Euler flux Jacobian.

use serde::{Deserialize, Serialize};

use super::GasModel;
use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
}

/// Square-root-density weighted interface state. `v` is zero in 1D.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoeAverage {
    pub u: f64,
    pub v: f64,
    /// Total specific enthalpy `(E + p) / rho`.
    pub h: f64,
    pub a: f64,
}

/// Wave speeds with right eigenvectors as the columns of `right` and left
/// eigenvectors as the rows of `left`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenSystem<const N: usize> {
    pub lambdas: [f64; N],
    pub right: [[f64; N]; N],
    pub left: [[f64; N]; N],
}

impl<const N: usize> EigenSystem<N> {
    /// `L u`: projection onto the characteristic fields.
    #[inline]
    pub fn to_characteristic(&self, u: &[f64; N]) -> [f64; N] {
        let mut out = [0.0; N];
        for (m, row) in self.left.iter().enumerate() {
            out[m] = row.iter().zip(u).map(|(l, x)| l * x).sum();
        }
        out
    }

    /// `R w`.
    #[inline]
    pub fn from_characteristic(&self, w: &[f64; N]) -> [f64; N] {
        let mut out = [0.0; N];
        for (r, row) in self.right.iter().enumerate() {
            out[r] = row.iter().zip(w).map(|(x, y)| x * y).sum();
        }
        out
    }
}

fn admissible_enthalpy(u: &[f64], e: f64, kinetic_mom2: f64, g: &GasModel, side: &str) -> Result<f64, Error> {
    let rho = u[0];
    let p = (g.gamma - 1.0) * (e - 0.5 * kinetic_mom2 / rho);
    if !(rho > 0.0 && p > 0.0 && p.is_finite()) {
        return Err(Error::Inadmissible {
            location: format!("{side} state of Roe average"),
            detail: format!("rho = {rho}, p = {p}"),
        });
    }
    Ok((e + p) / rho)
}

fn sound_from_enthalpy(h: f64, q2: f64, g: &GasModel) -> Result<f64, Error> {
    let a2 = (g.gamma - 1.0) * (h - 0.5 * q2);
    if a2 > 0.0 && a2.is_finite() {
        Ok(a2.sqrt())
    } else {
        Err(Error::DegenerateInput(format!("imaginary Roe sound speed (a^2 = {a2})")))
    }
}

pub fn roe_average_1d(ul: &[f64; 3], ur: &[f64; 3], g: &GasModel) -> Result<RoeAverage, Error> {
    let hl = admissible_enthalpy(ul, ul[2], ul[1] * ul[1], g, "left")?;
    let hr = admissible_enthalpy(ur, ur[2], ur[1] * ur[1], g, "right")?;
    let (sl, sr) = (ul[0].sqrt(), ur[0].sqrt());
    let inv = 1.0 / (sl + sr);
    let u = (sl * ul[1] / ul[0] + sr * ur[1] / ur[0]) * inv;
    let h = (sl * hl + sr * hr) * inv;
    let a = sound_from_enthalpy(h, u * u, g)?;
    Ok(RoeAverage { u, v: 0.0, h, a })
}

pub fn roe_average_2d(ul: &[f64; 4], ur: &[f64; 4], g: &GasModel) -> Result<RoeAverage, Error> {
    let hl = admissible_enthalpy(ul, ul[3], ul[1] * ul[1] + ul[2] * ul[2], g, "left")?;
    let hr = admissible_enthalpy(ur, ur[3], ur[1] * ur[1] + ur[2] * ur[2], g, "right")?;
    let (sl, sr) = (ul[0].sqrt(), ur[0].sqrt());
    let inv = 1.0 / (sl + sr);
    let u = (sl * ul[1] / ul[0] + sr * ur[1] / ur[0]) * inv;
    let v = (sl * ul[2] / ul[0] + sr * ur[2] / ur[0]) * inv;
    let h = (sl * hl + sr * hr) * inv;
    let a = sound_from_enthalpy(h, u * u + v * v, g)?;
    Ok(RoeAverage { u, v, h, a })
}

fn check_sound(avg: &RoeAverage) -> Result<(), Error> {
    if avg.a > 0.0 && avg.a.is_finite() {
        Ok(())
    } else {
        Err(Error::DegenerateInput(format!("sound speed {} is not positive", avg.a)))
    }
}

pub fn eigensystem_1d(avg: &RoeAverage, g: &GasModel) -> Result<EigenSystem<3>, Error> {
    check_sound(avg)?;
    let RoeAverage { u, h, a, .. } = *avg;
    let b1 = (g.gamma - 1.0) / (a * a);
    let b2 = 0.5 * u * u * b1;
    let ua = u / a;
    Ok(EigenSystem {
        lambdas: [u - a, u, u + a],
        right: [[1.0, 1.0, 1.0], [u - a, u, u + a], [h - u * a, 0.5 * u * u, h + u * a]],
        left: [
            [0.5 * (b2 + ua), -0.5 * (b1 * u + 1.0 / a), 0.5 * b1],
            [1.0 - b2, b1 * u, -b1],
            [0.5 * (b2 - ua), -0.5 * (b1 * u - 1.0 / a), 0.5 * b1],
        ],
    })
}

/// Eigenstructure of the x-Jacobian (`Axis::X`) or y-Jacobian (`Axis::Y`).
///
/// The y system is the x system of the state with its velocity components
/// exchanged, with the momentum rows and columns exchanged back.
pub fn eigensystem_2d(avg: &RoeAverage, g: &GasModel, axis: Axis) -> Result<EigenSystem<4>, Error> {
    check_sound(avg)?;
    let (un, ut) = match axis {
        Axis::X => (avg.u, avg.v),
        Axis::Y => (avg.v, avg.u),
    };
    let (h, a) = (avg.h, avg.a);
    let q2 = un * un + ut * ut;
    let b1 = (g.gamma - 1.0) / (a * a);
    let b2 = 0.5 * q2 * b1;
    let ua = un / a;
    let x = EigenSystem {
        lambdas: [un - a, un, un, un + a],
        right: [
            [1.0, 1.0, 0.0, 1.0],
            [un - a, un, 0.0, un + a],
            [ut, ut, 1.0, ut],
            [h - un * a, 0.5 * q2, ut, h + un * a],
        ],
        left: [
            [0.5 * (b2 + ua), -0.5 * (b1 * un + 1.0 / a), -0.5 * b1 * ut, 0.5 * b1],
            [1.0 - b2, b1 * un, b1 * ut, -b1],
            [-ut, 0.0, 1.0, 0.0],
            [0.5 * (b2 - ua), -0.5 * (b1 * un - 1.0 / a), -0.5 * b1 * ut, 0.5 * b1],
        ],
    };
    Ok(match axis {
        Axis::X => x,
        Axis::Y => {
            let mut y = x;
            y.right.swap(1, 2);
            for row in y.left.iter_mut() {
                row.swap(1, 2);
            }
            y
        }
    })
}
