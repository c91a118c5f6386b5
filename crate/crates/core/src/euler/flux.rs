//! Characteristic-wise WENO interface fluxes.
//!
//! At each interface the eigensystem of the Roe-averaged Jacobian is frozen,
//! the six stencil states and their physical fluxes are projected onto the
//! characteristic fields, each field is Lax–Friedrichs split with its own
//! global speed, both halves are WENO reconstructed, and the sum is projected
//! back.

use super::{eigensystem_1d, eigensystem_2d, roe_average_1d, roe_average_2d, Axis, EigenSystem, GasModel};
use crate::error::Error;
use crate::grid::GHOST;
use crate::kernels::{reconstruct_minus, reconstruct_plus, SchemeParams, StencilWindow};

/// A hyperbolic system that can be reconstructed field by field.
pub trait CharSystem<const N: usize>: Sync {
    fn flux(&self, u: &[f64; N]) -> [f64; N];
    fn interface_eigensystem(&self, ul: &[f64; N], ur: &[f64; N]) -> Result<EigenSystem<N>, Error>;
    /// Eigenvalues of the Jacobian at a cell state.
    fn wave_speeds(&self, u: &[f64; N]) -> [f64; N];
    fn pressure(&self, u: &[f64; N]) -> f64;
}

/// One-dimensional Euler system.
#[derive(Debug, Clone, Copy)]
pub struct Euler1D(pub GasModel);

/// Two-dimensional Euler system seen along x. The y direction is handled by
/// exchanging the velocity components before and after.
#[derive(Debug, Clone, Copy)]
pub struct Euler2DX(pub GasModel);

impl CharSystem<3> for Euler1D {
    #[inline]
    fn flux(&self, u: &[f64; 3]) -> [f64; 3] {
        self.0.flux_1d(u)
    }

    #[inline]
    fn interface_eigensystem(&self, ul: &[f64; 3], ur: &[f64; 3]) -> Result<EigenSystem<3>, Error> {
        eigensystem_1d(&roe_average_1d(ul, ur, &self.0)?, &self.0)
    }

    #[inline]
    fn wave_speeds(&self, u: &[f64; 3]) -> [f64; 3] {
        let vel = u[1] / u[0];
        let a = self.0.sound_speed(u[0], self.0.pressure_1d(u));
        [vel - a, vel, vel + a]
    }

    #[inline]
    fn pressure(&self, u: &[f64; 3]) -> f64 {
        self.0.pressure_1d(u)
    }
}

impl CharSystem<4> for Euler2DX {
    #[inline]
    fn flux(&self, u: &[f64; 4]) -> [f64; 4] {
        self.0.flux_2d_x(u)
    }

    #[inline]
    fn interface_eigensystem(&self, ul: &[f64; 4], ur: &[f64; 4]) -> Result<EigenSystem<4>, Error> {
        eigensystem_2d(&roe_average_2d(ul, ur, &self.0)?, &self.0, Axis::X)
    }

    #[inline]
    fn wave_speeds(&self, u: &[f64; 4]) -> [f64; 4] {
        let vel = u[1] / u[0];
        let a = self.0.sound_speed(u[0], self.0.pressure_2d(u));
        [vel - a, vel, vel, vel + a]
    }

    #[inline]
    fn pressure(&self, u: &[f64; 4]) -> f64 {
        self.0.pressure_2d(u)
    }
}

/// Numerical flux at the interface between `cells[2]` and `cells[3]`.
///
/// `cells` and `fluxes` cover the six cells `j-2 ..= j+3`; `alpha` holds the
/// Lax–Friedrichs speed of each characteristic field.
pub fn char_interface_flux<const N: usize, S: CharSystem<N>>(
    sys: &S,
    cells: &[[f64; N]; 6],
    fluxes: &[[f64; N]; 6],
    alpha: &[f64; N],
    p: &SchemeParams,
) -> Result<[f64; N], Error> {
    let eig = sys.interface_eigensystem(&cells[2], &cells[3])?;
    let mut s = [[0.0; N]; 6];
    let mut q = [[0.0; N]; 6];
    for k in 0..6 {
        s[k] = eig.to_characteristic(&cells[k]);
        q[k] = eig.to_characteristic(&fluxes[k]);
    }
    let mut fhat = [0.0; N];
    for m in 0..N {
        let a = alpha[m];
        let mut plus = [0.0; 5];
        let mut minus = [0.0; 5];
        for k in 0..5 {
            plus[k] = 0.5 * (q[k][m] + a * s[k][m]);
            minus[k] = 0.5 * (q[k + 1][m] - a * s[k + 1][m]);
        }
        fhat[m] = reconstruct_plus(&StencilWindow::unit(plus), p) + reconstruct_minus(&StencilWindow::unit(minus), p);
    }
    Ok(eig.from_characteristic(&fhat))
}

/// Interface fluxes along one padded line of `n + 2*GHOST` cells.
///
/// Writes the `n + 1` fluxes at `x[j+1/2]`, `j = -1 ..= n-1`, into `out`.
/// `scratch` receives the physical fluxes of the cells.
pub fn line_fluxes<const N: usize, S: CharSystem<N>>(
    sys: &S,
    line: &[[f64; N]],
    alpha: &[f64; N],
    p: &SchemeParams,
    scratch: &mut Vec<[f64; N]>,
    out: &mut [[f64; N]],
) -> Result<(), (usize, Error)> {
    let n = line.len() - 2 * GHOST;
    debug_assert_eq!(out.len(), n + 1);
    scratch.clear();
    scratch.extend(line.iter().map(|u| sys.flux(u)));
    for (i, o) in out.iter_mut().enumerate() {
        // Interface i sits between padded cells i + GHOST - 1 and i + GHOST.
        let lo = i + GHOST - 3;
        let cells: &[[f64; N]; 6] = line[lo..lo + 6].try_into().expect("six cells");
        let fl: &[[f64; N]; 6] = scratch[lo..lo + 6].try_into().expect("six fluxes");
        *o = char_interface_flux(sys, cells, fl, alpha, p).map_err(|e| (i, e))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::Variant;

    #[test]
    fn uniform_flow_reproduces_physical_flux() {
        let g = GasModel::AIR;
        let sys = Euler1D(g);
        let u = [1.1, 0.4, 2.9];
        let f = sys.flux(&u);
        let alpha = sys.wave_speeds(&u).map(f64::abs);
        for v in Variant::ALL {
            let out = char_interface_flux(&sys, &[u; 6], &[f; 6], &alpha, &SchemeParams::new(v)).unwrap();
            for m in 0..3 {
                assert!((out[m] - f[m]).abs() <= 1e-13 * f[m].abs().max(1.0), "{v}: {out:?} vs {f:?}");
            }
        }
    }

    #[test]
    fn jump_gives_finite_flux() {
        let g = GasModel::AIR;
        let sys = Euler1D(g);
        let l = [1.0, 0.75, 1.0 / 0.4 + 0.5 * 0.5625];
        let r = [0.125, 0.0, 0.1 / 0.4];
        let cells = [l, l, l, r, r, r];
        let fl = cells.map(|c| sys.flux(&c));
        let mut alpha = [0.0f64; 3];
        for c in &cells {
            for (a, s) in alpha.iter_mut().zip(sys.wave_speeds(c)) {
                *a = a.max(s.abs());
            }
        }
        let out = char_interface_flux(&sys, &cells, &fl, &alpha, &SchemeParams::new(Variant::Mp)).unwrap();
        assert!(out.iter().all(|x| x.is_finite()));
        // Mass flux lies between the two one-sided physical fluxes plus LF dissipation.
        let lf = 0.5 * (fl[2][0] + fl[3][0]) + 0.5 * alpha.iter().cloned().fold(0.0, f64::max) * (l[0] - r[0]);
        assert!(out[0] > 0.0 && out[0] <= lf + 1e-12);
    }
}
