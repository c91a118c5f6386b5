//! Exact solution of the 1D Riemann problem for an ideal gas.
//!
//! Star pressure by Newton iteration on the pressure function with a
//! primitive-variable initial guess; self-similar sampling at `x/t`.

use crate::error::Error;
use crate::euler::{GasModel, Primitive1D};

/// Star region of a Riemann problem, ready for sampling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiemannSolution {
    pub left: Primitive1D,
    pub right: Primitive1D,
    pub p_star: f64,
    pub u_star: f64,
    pub gas: GasModel,
}

/// Pressure function of one side and its derivative.
fn side_fn(p: f64, w: &Primitive1D, g: f64) -> (f64, f64) {
    let a = (g * w.p / w.rho).sqrt();
    if p > w.p {
        let ak = 2.0 / ((g + 1.0) * w.rho);
        let bk = (g - 1.0) / (g + 1.0) * w.p;
        let q = (ak / (p + bk)).sqrt();
        ((p - w.p) * q, q * (1.0 - 0.5 * (p - w.p) / (bk + p)))
    } else {
        let r = p / w.p;
        let e = (g - 1.0) / (2.0 * g);
        (2.0 * a / (g - 1.0) * (r.powf(e) - 1.0), r.powf(-(g + 1.0) / (2.0 * g)) / (w.rho * a))
    }
}

impl RiemannSolution {
    pub fn solve(left: &Primitive1D, right: &Primitive1D, gas: &GasModel) -> Result<Self, Error> {
        left.check()?;
        right.check()?;
        let g = gas.gamma;
        let (al, ar) = (gas.sound_speed(left.rho, left.p), gas.sound_speed(right.rho, right.p));
        let du = right.u - left.u;
        if 2.0 * (al + ar) / (g - 1.0) <= du {
            return Err(Error::Vacuum);
        }
        let ppv = 0.5 * (left.p + right.p) - 0.125 * du * (left.rho + right.rho) * (al + ar);
        let mut p = ppv.max(1e-8 * left.p.min(right.p));
        for _ in 0..100 {
            let (fl, dl) = side_fn(p, left, g);
            let (fr, dr) = side_fn(p, right, g);
            let next = (p - (fl + fr + du) / (dl + dr)).max(1e-14 * p);
            let change = 2.0 * (next - p).abs() / (next + p);
            p = next;
            if change < 1e-15 {
                let u = 0.5 * (left.u + right.u) + 0.5 * (side_fn(p, right, g).0 - side_fn(p, left, g).0);
                return Ok(Self { left: *left, right: *right, p_star: p, u_star: u, gas: *gas });
            }
        }
        Err(Error::NonConvergence("star pressure iteration".into()))
    }

    /// Density on the left and right of the contact.
    pub fn star_densities(&self) -> (f64, f64) {
        let g = self.gas.gamma;
        let side = |w: &Primitive1D| {
            let r = self.p_star / w.p;
            if r > 1.0 {
                let k = (g - 1.0) / (g + 1.0);
                w.rho * (r + k) / (k * r + 1.0)
            } else {
                w.rho * r.powf(1.0 / g)
            }
        };
        (side(&self.left), side(&self.right))
    }

    /// State at similarity coordinate `xi = (x - x0)/t`.
    pub fn sample(&self, xi: f64) -> Primitive1D {
        let g = self.gas.gamma;
        let (ps, us) = (self.p_star, self.u_star);
        let (rl, rr) = self.star_densities();
        let g1 = (g - 1.0) / (g + 1.0);
        if xi <= us {
            let w = self.left;
            let a = self.gas.sound_speed(w.rho, w.p);
            if ps > w.p {
                let s = w.u - a * ((g + 1.0) / (2.0 * g) * ps / w.p + (g - 1.0) / (2.0 * g)).sqrt();
                if xi <= s {
                    w
                } else {
                    Primitive1D::new(rl, us, ps)
                }
            } else {
                let head = w.u - a;
                let tail = us - a * (ps / w.p).powf((g - 1.0) / (2.0 * g));
                if xi <= head {
                    w
                } else if xi >= tail {
                    Primitive1D::new(rl, us, ps)
                } else {
                    let c = 2.0 / (g + 1.0) + g1 / a * (w.u - xi);
                    let rho = w.rho * c.powf(2.0 / (g - 1.0));
                    let u = 2.0 / (g + 1.0) * (a + 0.5 * (g - 1.0) * w.u + xi);
                    Primitive1D::new(rho, u, w.p * c.powf(2.0 * g / (g - 1.0)))
                }
            }
        } else {
            let w = self.right;
            let a = self.gas.sound_speed(w.rho, w.p);
            if ps > w.p {
                let s = w.u + a * ((g + 1.0) / (2.0 * g) * ps / w.p + (g - 1.0) / (2.0 * g)).sqrt();
                if xi >= s {
                    w
                } else {
                    Primitive1D::new(rr, us, ps)
                }
            } else {
                let head = w.u + a;
                let tail = us + a * (ps / w.p).powf((g - 1.0) / (2.0 * g));
                if xi >= head {
                    w
                } else if xi <= tail {
                    Primitive1D::new(rr, us, ps)
                } else {
                    let c = 2.0 / (g + 1.0) - g1 / a * (w.u - xi);
                    let rho = w.rho * c.powf(2.0 / (g - 1.0));
                    let u = 2.0 / (g + 1.0) * (-a + 0.5 * (g - 1.0) * w.u + xi);
                    Primitive1D::new(rho, u, w.p * c.powf(2.0 * g / (g - 1.0)))
                }
            }
        }
    }
}

/// Exact state at `xi = (x - x0)/t` of the Riemann problem with data `left | right`.
pub fn exact_riemann(left: &Primitive1D, right: &Primitive1D, xi: f64, gas: &GasModel) -> Result<Primitive1D, Error> {
    Ok(RiemannSolution::solve(left, right, gas)?.sample(xi))
}
