//! Explicit Runge–Kutta steppers and time-step policies.

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Semi-discrete operator `du/dt = L(t, u)`.
pub trait RhsOperator {
    fn eval(&mut self, t: f64, u: &[f64], out: &mut [f64]) -> Result<(), Error>;
}

impl<F> RhsOperator for F
where
    F: FnMut(f64, &[f64], &mut [f64]) -> Result<(), Error>,
{
    fn eval(&mut self, t: f64, u: &[f64], out: &mut [f64]) -> Result<(), Error> {
        self(t, u, out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Integrator {
    /// Three-stage TVD (SSP) Runge–Kutta.
    Rk3,
    /// Classical four-stage Runge–Kutta.
    Rk4,
}

fn check_state(u: &[f64]) -> Result<(), Error> {
    match u.iter().position(|x| !x.is_finite()) {
        Some(k) => Err(Error::NonFinite { location: format!("state entry {k}") }),
        None => Ok(()),
    }
}

/// Reusable stage storage, so long runs do not allocate per step.
#[derive(Debug, Default, Clone)]
pub struct StageBuffers {
    k: Vec<f64>,
    s1: Vec<f64>,
    s2: Vec<f64>,
    s3: Vec<f64>,
}

impl StageBuffers {
    fn ensure(&mut self, n: usize) {
        for b in [&mut self.k, &mut self.s1, &mut self.s2, &mut self.s3] {
            b.resize(n, 0.0);
        }
    }
}

/// One TVD-RK3 step, in place:
/// `u1 = u + dt L(u)`, `u2 = 3/4 u + 1/4 u1 + 1/4 dt L(u1)`,
/// `u <- 1/3 u + 2/3 u2 + 2/3 dt L(u2)`.
pub fn rk3_step(l: &mut impl RhsOperator, t: f64, u: &mut [f64], dt: f64, buf: &mut StageBuffers) -> Result<(), Error> {
    let n = u.len();
    buf.ensure(n);
    let StageBuffers { k, s1, s2, .. } = buf;
    l.eval(t, u, k)?;
    for i in 0..n {
        s1[i] = u[i] + dt * k[i];
    }
    l.eval(t + dt, s1, k)?;
    for i in 0..n {
        s2[i] = 0.75 * u[i] + 0.25 * s1[i] + 0.25 * dt * k[i];
    }
    l.eval(t + 0.5 * dt, s2, k)?;
    for i in 0..n {
        u[i] = u[i] / 3.0 + 2.0 / 3.0 * s2[i] + 2.0 / 3.0 * dt * k[i];
    }
    check_state(u)
}

/// One classical RK4 step in the form
/// `u1 = u + dt/2 L(u)`, `u2 = u + dt/2 L(u1)`, `u3 = u + dt L(u2)`,
/// `u <- (-u + u1 + 2 u2 + u3)/3 + dt/6 L(u3)`.
pub fn rk4_step(l: &mut impl RhsOperator, t: f64, u: &mut [f64], dt: f64, buf: &mut StageBuffers) -> Result<(), Error> {
    let n = u.len();
    buf.ensure(n);
    let StageBuffers { k, s1, s2, s3 } = buf;
    l.eval(t, u, k)?;
    for i in 0..n {
        s1[i] = u[i] + 0.5 * dt * k[i];
    }
    l.eval(t + 0.5 * dt, s1, k)?;
    for i in 0..n {
        s2[i] = u[i] + 0.5 * dt * k[i];
    }
    l.eval(t + 0.5 * dt, s2, k)?;
    for i in 0..n {
        s3[i] = u[i] + dt * k[i];
    }
    l.eval(t + dt, s3, k)?;
    for i in 0..n {
        u[i] = (-u[i] + s1[i] + 2.0 * s2[i] + s3[i]) / 3.0 + dt / 6.0 * k[i];
    }
    check_state(u)
}

pub fn step(
    which: Integrator,
    l: &mut impl RhsOperator,
    t: f64,
    u: &mut [f64],
    dt: f64,
    buf: &mut StageBuffers,
) -> Result<(), Error> {
    match which {
        Integrator::Rk3 => rk3_step(l, t, u, dt, buf),
        Integrator::Rk4 => rk4_step(l, t, u, dt, buf),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DtMode {
    /// `dt = cfl * dx / alpha`.
    Cfl,
    /// `dt = c0 * dx^(5/4)`, with `c0` equal to the CFL number.
    Convergence,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DtPolicy {
    pub mode: DtMode,
    pub cfl: f64,
}

impl DtPolicy {
    pub const CONVERGENCE_EXPONENT: f64 = 1.25;

    pub fn cfl(cfl: f64) -> Self {
        Self { mode: DtMode::Cfl, cfl }
    }

    pub fn convergence(c0: f64) -> Self {
        Self { mode: DtMode::Convergence, cfl: c0 }
    }
}

/// Next time step, truncated so that the run ends exactly at `t_end`.
pub fn compute_dt(policy: &DtPolicy, dx: f64, alpha: f64, t_now: f64, t_end: f64) -> Result<f64, Error> {
    if !(dx > 0.0) || !(t_now < t_end) {
        return Err(Error::Precondition(format!(
            "need dx > 0 and t_now < t_end (dx = {dx}, t = {t_now}, t_end = {t_end})"
        )));
    }
    if !(policy.cfl > 0.0 && policy.cfl <= 1.0) {
        return Err(Error::Config(format!("CFL number must lie in (0, 1], got {}", policy.cfl)));
    }
    let dt = match policy.mode {
        DtMode::Cfl => {
            if !(alpha > 0.0 && alpha.is_finite()) {
                return Err(Error::DegenerateInput(format!("maximum wave speed is {alpha}")));
            }
            policy.cfl * dx / alpha
        }
        DtMode::Convergence => policy.cfl * dx.powf(DtPolicy::CONVERGENCE_EXPONENT),
    };
    Ok(dt.min(t_end - t_now))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn linear(lambda: f64) -> impl FnMut(f64, &[f64], &mut [f64]) -> Result<(), Error> {
        move |_t, u, out| {
            for (o, x) in out.iter_mut().zip(u) {
                *o = lambda * x;
            }
            Ok(())
        }
    }

    #[test]
    fn zero_operator_is_identity() {
        let mut zero = |_t: f64, _u: &[f64], out: &mut [f64]| {
            out.fill(0.0);
            Ok(())
        };
        let mut buf = StageBuffers::default();
        let mut u = vec![1.0, -2.0, 3.5];
        rk3_step(&mut zero, 0.0, &mut u, 0.1, &mut buf).unwrap();
        assert_eq!(u, vec![1.0, -2.0, 3.5]);
        rk4_step(&mut zero, 0.0, &mut u, 0.1, &mut buf).unwrap();
        assert_eq!(u, vec![1.0, -2.0, 3.5]);
    }

    #[test]
    fn constant_operator_integrates_exactly() {
        let mut c = |_t: f64, _u: &[f64], out: &mut [f64]| {
            out.fill(2.0);
            Ok(())
        };
        let mut buf = StageBuffers::default();
        let mut u = vec![1.0];
        rk3_step(&mut c, 0.0, &mut u, 0.25, &mut buf).unwrap();
        assert!((u[0] - 1.5).abs() < 1e-15);
        rk4_step(&mut c, 0.0, &mut u, 0.25, &mut buf).unwrap();
        assert!((u[0] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn amplification_polynomials() {
        let mut buf = StageBuffers::default();
        for z in [-1.0, -0.5, -0.1, 0.3, 1.0] {
            let mut u = vec![1.0];
            rk3_step(&mut linear(z), 0.0, &mut u, 1.0, &mut buf).unwrap();
            let r3 = 1.0 + z + z * z / 2.0 + z * z * z / 6.0;
            assert!((u[0] - r3).abs() < 1e-14, "z = {z}");
            let mut u = vec![1.0];
            rk4_step(&mut linear(z), 0.0, &mut u, 1.0, &mut buf).unwrap();
            let r4 = r3 + z.powi(4) / 24.0;
            assert!((u[0] - r4).abs() < 1e-14, "z = {z}");
        }
    }

    #[test]
    fn rk4_is_fourth_order() {
        let mut buf = StageBuffers::default();
        let errors: Vec<f64> = [10, 20, 40, 80]
            .iter()
            .map(|&steps| {
                let dt = 1.0 / steps as f64;
                let mut u = vec![1.0];
                for s in 0..steps {
                    rk4_step(&mut linear(1.0), s as f64 * dt, &mut u, dt, &mut buf).unwrap();
                }
                (u[0] - std::f64::consts::E).abs()
            })
            .collect();
        for w in errors.windows(2) {
            let order = (w[0] / w[1]).log2();
            assert!((order - 4.0).abs() < 0.1, "order {order}");
        }
    }

    #[test]
    fn dt_policies() {
        let cfl = DtPolicy::cfl(0.5);
        assert!((compute_dt(&cfl, 0.01, 2.0, 0.0, 1.0).unwrap() - 0.0025).abs() < 1e-18);
        assert_eq!(compute_dt(&cfl, 0.01, 2.0, 0.999, 1.0).unwrap(), 1.0 - 0.999);
        assert!(matches!(compute_dt(&cfl, 0.01, 0.0, 0.0, 1.0), Err(Error::DegenerateInput(_))));
        let conv = DtPolicy::convergence(0.5);
        assert_eq!(compute_dt(&conv, 0.01, 0.0, 0.0, 1.0).unwrap(), 0.5 * 0.01f64.powf(1.25));
    }

    #[test]
    fn non_finite_state_is_an_error() {
        let mut blow = |_t: f64, _u: &[f64], out: &mut [f64]| {
            out.fill(f64::INFINITY);
            Ok(())
        };
        let mut u = vec![1.0];
        assert!(rk3_step(&mut blow, 0.0, &mut u, 0.1, &mut StageBuffers::default()).is_err());
    }
}
