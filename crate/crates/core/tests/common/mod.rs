#![allow(dead_code)]

use std::f64::consts::PI;

use weno_lab::euler::{EigenSystem, GasModel, RoeAverage};
use weno_lab::kernels::{nonlinear_weights, StencilWindow};
use weno_lab::{SchemeParams, Variant};

pub fn sin(x: f64) -> f64 {
    (PI * x).sin()
}

pub fn sin_cubed(x: f64) -> f64 {
    (PI * x).sin().powi(3)
}

/// Point kinds of the weight-order study: `(label, profile, x0)`. The profile's
/// derivatives vanish at `x0` as named.
pub type Point = (&'static str, fn(f64) -> f64, f64);

pub fn weight_order_points() -> [Point; 3] {
    [("generic", sin, 0.3), ("f'=0", sin, 0.5), ("f'=f''=0", sin_cubed, 0.0)]
}

/// Least-squares slope of `log max_k |omega_k - d_k|` against `log h` for the
/// windows whose interface `x[j+1/2]` sits at `x0`, `h = 0.04 / 2^k`.
///
/// Deviations at the roundoff floor carry no rate information and are dropped.
pub fn deviation_slope(f: fn(f64) -> f64, x0: f64, variant: Variant) -> f64 {
    let p = SchemeParams::new(variant);
    let pts: Vec<(f64, f64)> = (0..5)
        .filter_map(|k| {
            let h = 0.04 / f64::from(1 << k);
            let w = [-2.5, -1.5, -0.5, 0.5, 1.5].map(|s| f(x0 + s * h));
            let dev = nonlinear_weights(&StencilWindow::new(w, h), &p).max_deviation();
            (dev > 1e-13).then(|| (h.ln(), dev.ln()))
        })
        .collect();
    assert!(pts.len() >= 3, "too few resolvable deviations for {variant:?} at {x0}");
    let n = pts.len() as f64;
    let (mx, my) = (pts.iter().map(|p| p.0).sum::<f64>() / n, pts.iter().map(|p| p.1).sum::<f64>() / n);
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    sxy / sxx
}

/// Density L1 distance `dx * sum |a - b|`.
pub fn l1(a: &[f64], b: &[f64], dx: f64) -> f64 {
    dx * a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>()
}

pub const AIR: GasModel = GasModel::AIR;

pub fn matmul<const N: usize>(a: &[[f64; N]; N], b: &[[f64; N]; N]) -> [[f64; N]; N] {
    let mut c = [[0.0; N]; N];
    for i in 0..N {
        for j in 0..N {
            c[i][j] = (0..N).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

pub fn max_abs<const N: usize>(a: &[[f64; N]; N]) -> f64 {
    a.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs()))
}

/// `R diag(lambda) L`.
pub fn assembled<const N: usize>(e: &EigenSystem<N>) -> [[f64; N]; N] {
    let mut rl = e.right;
    for row in rl.iter_mut() {
        for (k, x) in row.iter_mut().enumerate() {
            *x *= e.lambdas[k];
        }
    }
    matmul(&rl, &e.left)
}

/// Central-difference Jacobian of `flux` at `u`.
pub fn fd_jacobian<const N: usize>(flux: impl Fn(&[f64; N]) -> [f64; N], u: &[f64; N]) -> [[f64; N]; N] {
    let mut jac = [[0.0; N]; N];
    for k in 0..N {
        let h = 1e-6 * u[k].abs().max(1.0);
        let (mut up, mut um) = (*u, *u);
        up[k] += h;
        um[k] -= h;
        let (fp, fm) = (flux(&up), flux(&um));
        for i in 0..N {
            jac[i][k] = (fp[i] - fm[i]) / (2.0 * h);
        }
    }
    jac
}

pub fn relative_gap<const N: usize>(a: &[[f64; N]; N], b: &[[f64; N]; N]) -> f64 {
    let mut d = [[0.0; N]; N];
    for i in 0..N {
        for j in 0..N {
            d[i][j] = a[i][j] - b[i][j];
        }
    }
    max_abs(&d) / max_abs(b)
}

pub fn identity_gap<const N: usize>(e: &EigenSystem<N>) -> f64 {
    let mut p = matmul(&e.left, &e.right);
    for (i, row) in p.iter_mut().enumerate() {
        row[i] -= 1.0;
    }
    max_abs(&p)
}

/// Conserved state whose Roe quantities are exactly `avg` (density 1).
pub fn state_of_average_2d(avg: &RoeAverage) -> [f64; 4] {
    let p = avg.a * avg.a / AIR.gamma;
    [1.0, avg.u, avg.v, p / (AIR.gamma - 1.0) + 0.5 * (avg.u * avg.u + avg.v * avg.v)]
}

pub fn cons_1d(rho: f64, u: f64, p: f64) -> [f64; 3] {
    [rho, rho * u, p / (AIR.gamma - 1.0) + 0.5 * rho * u * u]
}

pub fn cons_2d(rho: f64, u: f64, v: f64, p: f64) -> [f64; 4] {
    [rho, rho * u, rho * v, p / (AIR.gamma - 1.0) + 0.5 * rho * (u * u + v * v)]
}
