//! Benchmark catalog: initial data, boundary conditions, and exact or
//! reference solutions.

pub mod boundary;
pub mod reference;
pub mod riemann;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

pub use boundary::{Boundaries, BoundaryCondition, DirichletData, DmrBoundary};
pub use reference::{reference_solution, ReferenceSolution};
pub use riemann::{exact_riemann, RiemannSolution};

use crate::error::Error;
use crate::euler::{prim_to_cons, prim_to_cons_2d, GasModel, Primitive1D, Primitive2D};
use crate::scalar::FluxModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Dim {
    One,
    Two,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Model {
    Scalar { flux: FluxModel },
    Euler1D { gas: GasModel },
    Euler2D { gas: GasModel, gravity: bool },
}

/// Scalar initial profiles on `[-1, 1]`, extended periodically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalarProfile {
    /// `sin(pi x)`
    Sin,
    /// `sin(pi x - sin(pi x)/pi)`: first derivative vanishes with nonzero second.
    SinCritical,
    /// `sin(pi x)^3`: first and second derivatives vanish with nonzero third.
    SinCubed,
    /// `-sin(pi x) - x^3/2`, plus 1 on `[0, 1)`.
    PiecewiseSine,
    /// 1 on `[-1/2, 1/2)`, else 0.
    SquareWave,
    /// `-sin(pi x)`
    NegSin,
    /// `1/2 + sin(pi x)`
    ShiftedSin,
}

/// Maps `x` into `[-1, 1)`.
fn wrap(x: f64) -> f64 {
    (x + 1.0).rem_euclid(2.0) - 1.0
}

impl ScalarProfile {
    pub fn eval(self, x: f64) -> f64 {
        let x = wrap(x);
        let s = (PI * x).sin();
        match self {
            ScalarProfile::Sin => s,
            ScalarProfile::SinCritical => (PI * x - s / PI).sin(),
            ScalarProfile::SinCubed => s * s * s,
            ScalarProfile::PiecewiseSine => {
                let base = -s - 0.5 * x * x * x;
                if x < 0.0 {
                    base
                } else {
                    base + 1.0
                }
            }
            ScalarProfile::SquareWave => {
                if (-0.5..0.5).contains(&x) {
                    1.0
                } else {
                    0.0
                }
            }
            ScalarProfile::NegSin => -s,
            ScalarProfile::ShiftedSin => 0.5 + s,
        }
    }

    /// Derivative away from jumps.
    pub fn derivative(self, x: f64) -> f64 {
        let x = wrap(x);
        let (s, c) = (PI * x).sin_cos();
        match self {
            ScalarProfile::Sin | ScalarProfile::ShiftedSin => PI * c,
            ScalarProfile::NegSin => -PI * c,
            ScalarProfile::SinCritical => (PI * x - s / PI).cos() * (PI - c),
            ScalarProfile::SinCubed => 3.0 * s * s * PI * c,
            ScalarProfile::PiecewiseSine => -PI * c - 1.5 * x * x,
            ScalarProfile::SquareWave => 0.0,
        }
    }
}

/// Four constant states split at `split`, ordered NE, NW, SW, SE.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quadrants {
    pub split: [f64; 2],
    pub states: [Primitive2D; 4],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InitialCondition {
    Scalar { profile: ScalarProfile },
    Riemann1D { left: Primitive1D, right: Primitive1D, x0: f64 },
    ShockEntropy { left: Primitive1D, x0: f64, amplitude: f64, wavenumber: f64 },
    Riemann2D { quadrants: Quadrants },
    RayleighTaylor { amplitude: f64 },
    DoubleMach { preshock: Primitive2D, postshock: Primitive2D, x0: f64, angle_deg: f64 },
}

/// How a problem's numerical solution is judged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExactPolicy {
    Analytic,
    ExactRiemann,
    FineGridReference,
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub name: String,
    pub dim: Dim,
    /// `[x_lo, x_hi, y_lo, y_hi]`; the y bounds are unused in 1D.
    pub bounds: [f64; 4],
    pub model: Model,
    pub ic: InitialCondition,
    pub bcs: Boundaries,
    pub t_end: f64,
    /// Default `[nx, ny]`; `ny` is 1 in 1D.
    pub default_n: [usize; 2],
    pub cfl: f64,
    pub policy: ExactPolicy,
}

pub const PROBLEM_NAMES: [&str; 13] = [
    "advection_sin",
    "advection_sin_critical",
    "advection_sin_cubed",
    "advection_piecewise_sine",
    "advection_square_wave",
    "burgers_sin",
    "burgers_shifted_sin",
    "sod_modified",
    "lax",
    "shock_entropy",
    "riemann2d",
    "rayleigh_taylor",
    "double_mach",
];

fn scalar_problem(
    name: &str,
    flux: FluxModel,
    profile: ScalarProfile,
    t_end: f64,
    n: usize,
    policy: ExactPolicy,
) -> ProblemSpec {
    ProblemSpec {
        name: name.to_string(),
        dim: Dim::One,
        bounds: [-1.0, 1.0, 0.0, 0.0],
        model: Model::Scalar { flux },
        ic: InitialCondition::Scalar { profile },
        bcs: Boundaries::all(BoundaryCondition::Periodic),
        t_end,
        default_n: [n, 1],
        cfl: 0.5,
        policy,
    }
}

fn riemann_1d(name: &str, left: Primitive1D, right: Primitive1D, bounds: [f64; 2], x0: f64, t_end: f64) -> ProblemSpec {
    ProblemSpec {
        name: name.to_string(),
        dim: Dim::One,
        bounds: [bounds[0], bounds[1], 0.0, 0.0],
        model: Model::Euler1D { gas: GasModel::AIR },
        ic: InitialCondition::Riemann1D { left, right, x0 },
        bcs: Boundaries::all(BoundaryCondition::Transmissive),
        t_end,
        default_n: [200, 1],
        cfl: 0.5,
        policy: ExactPolicy::ExactRiemann,
    }
}

/// State behind a planar shock of Mach number `mach` moving into `pre` at
/// rest, with the flow direction at `angle_deg` below the x axis's normal.
pub fn postshock_state(pre: &Primitive2D, mach: f64, gamma: f64, angle_deg: f64) -> Primitive2D {
    let m2 = mach * mach;
    let rho = pre.rho * (gamma + 1.0) * m2 / ((gamma - 1.0) * m2 + 2.0);
    let p = pre.p * (1.0 + 2.0 * gamma / (gamma + 1.0) * (m2 - 1.0));
    let w = mach * (gamma * pre.p / pre.rho).sqrt();
    let un = w * (1.0 - pre.rho / rho);
    let th = angle_deg.to_radians();
    Primitive2D { rho, u: un * th.sin(), v: -un * th.cos(), p }
}

fn double_mach(name: &str, n: [usize; 2]) -> ProblemSpec {
    let gas = GasModel::AIR;
    let pre = Primitive2D::new(1.4, 0.0, 0.0, 1.0);
    let angle = 60.0;
    let post = postshock_state(&pre, 10.0, gas.gamma, angle);
    let cons = |w: &Primitive2D| prim_to_cons_2d(w, &gas).expect("admissible").to_array();
    let dmr = DmrBoundary {
        postshock: cons(&post),
        preshock: cons(&pre),
        x_wall: 1.0 / 6.0,
        shock_speed: 10.0,
        angle_deg: angle,
    };
    ProblemSpec {
        name: name.to_string(),
        dim: Dim::Two,
        bounds: [0.0, 4.0, 0.0, 1.0],
        model: Model::Euler2D { gas, gravity: false },
        ic: InitialCondition::DoubleMach { preshock: pre, postshock: post, x0: 1.0 / 6.0, angle_deg: angle },
        bcs: Boundaries {
            left: BoundaryCondition::Dirichlet(DirichletData::Constant(cons(&post).to_vec())),
            right: BoundaryCondition::Transmissive,
            bottom: BoundaryCondition::DmrSpecial(dmr.clone()),
            top: BoundaryCondition::DmrSpecial(dmr),
        },
        t_end: 0.2,
        default_n: n,
        cfl: 0.5,
        policy: ExactPolicy::None,
    }
}

/// Looks up a catalog entry by name.
pub fn make_problem(name: &str) -> Result<ProblemSpec, Error> {
    use ScalarProfile as S;
    let adv = FluxModel::LinearAdvection { speed: 1.0 };
    let spec = match name {
        "advection_sin" => scalar_problem(name, adv, S::Sin, 2.0, 160, ExactPolicy::Analytic),
        "advection_sin_critical" => scalar_problem(name, adv, S::SinCritical, 2.0, 160, ExactPolicy::Analytic),
        "advection_sin_cubed" => scalar_problem(name, adv, S::SinCubed, 2.0, 320, ExactPolicy::Analytic),
        "advection_piecewise_sine" => scalar_problem(name, adv, S::PiecewiseSine, 8.0, 200, ExactPolicy::Analytic),
        "advection_square_wave" => scalar_problem(name, adv, S::SquareWave, 10.0, 200, ExactPolicy::Analytic),
        "burgers_sin" => scalar_problem(name, FluxModel::Burgers, S::NegSin, 1.5, 200, ExactPolicy::FineGridReference),
        "burgers_shifted_sin" => {
            scalar_problem(name, FluxModel::Burgers, S::ShiftedSin, 0.55, 200, ExactPolicy::FineGridReference)
        }
        "sod_modified" => {
            riemann_1d(name, Primitive1D::new(1.0, 0.75, 1.0), Primitive1D::new(0.125, 0.0, 0.1), [0.0, 1.0], 0.5, 0.2)
        }
        "lax" => riemann_1d(
            name,
            Primitive1D::new(0.445, 0.698, 3.528),
            Primitive1D::new(0.5, 0.0, 0.571),
            [-5.0, 5.0],
            0.0,
            1.3,
        ),
        "shock_entropy" => ProblemSpec {
            name: name.to_string(),
            dim: Dim::One,
            bounds: [-5.0, 5.0, 0.0, 0.0],
            model: Model::Euler1D { gas: GasModel::AIR },
            ic: InitialCondition::ShockEntropy {
                left: Primitive1D::new(3.857143, 2.629369, 10.33333),
                x0: -4.0,
                amplitude: 0.2,
                wavenumber: 5.0,
            },
            bcs: Boundaries::all(BoundaryCondition::Transmissive),
            t_end: 1.8,
            default_n: [200, 1],
            cfl: 0.5,
            policy: ExactPolicy::FineGridReference,
        },
        "riemann2d" => ProblemSpec {
            name: name.to_string(),
            dim: Dim::Two,
            bounds: [0.0, 1.0, 0.0, 1.0],
            model: Model::Euler2D { gas: GasModel::AIR, gravity: false },
            ic: InitialCondition::Riemann2D {
                quadrants: Quadrants {
                    split: [0.8, 0.8],
                    states: [
                        Primitive2D::new(1.5, 0.0, 0.0, 1.5),
                        Primitive2D::new(0.5323, 1.206, 0.0, 0.3),
                        Primitive2D::new(0.138, 1.206, 1.206, 0.029),
                        Primitive2D::new(0.5323, 0.0, 1.206, 0.3),
                    ],
                },
            },
            bcs: Boundaries::all(BoundaryCondition::Dirichlet(DirichletData::Initial)),
            t_end: 0.8,
            default_n: [400, 400],
            cfl: 0.5,
            policy: ExactPolicy::None,
        },
        "rayleigh_taylor" => {
            let gas = GasModel::MONATOMIC;
            let cons = |w| prim_to_cons_2d(&w, &gas).expect("admissible").to_array().to_vec();
            ProblemSpec {
                name: name.to_string(),
                dim: Dim::Two,
                bounds: [0.0, 0.25, 0.0, 1.0],
                model: Model::Euler2D { gas, gravity: true },
                ic: InitialCondition::RayleighTaylor { amplitude: 0.025 },
                bcs: Boundaries {
                    left: BoundaryCondition::Reflective,
                    right: BoundaryCondition::Reflective,
                    bottom: BoundaryCondition::Dirichlet(DirichletData::Constant(cons(Primitive2D::new(
                        2.0, 0.0, 0.0, 1.0,
                    )))),
                    top: BoundaryCondition::Dirichlet(DirichletData::Constant(cons(Primitive2D::new(
                        1.0, 0.0, 0.0, 2.5,
                    )))),
                },
                t_end: 1.95,
                default_n: [125, 500],
                cfl: 0.5,
                policy: ExactPolicy::None,
            }
        }
        "double_mach" => double_mach(name, [1600, 400]),
        other => return Err(Error::UnknownProblem(other.to_string())),
    };
    Ok(spec)
}

impl ProblemSpec {
    pub fn is_scalar(&self) -> bool {
        matches!(self.model, Model::Scalar { .. })
    }

    pub fn gas(&self) -> Option<GasModel> {
        match self.model {
            Model::Scalar { .. } => None,
            Model::Euler1D { gas } | Model::Euler2D { gas, .. } => Some(gas),
        }
    }

    /// Number of conserved components per cell.
    pub fn components(&self) -> usize {
        match self.model {
            Model::Scalar { .. } => 1,
            Model::Euler1D { .. } => 3,
            Model::Euler2D { .. } => 4,
        }
    }

    /// Initial conserved state at `(x, y)`, written to `out`.
    pub fn initial_state(&self, x: f64, y: f64, out: &mut [f64]) {
        let gas = self.gas().unwrap_or_default();
        let put1 = |w: Primitive1D, out: &mut [f64]| {
            out.copy_from_slice(&prim_to_cons(&w, &gas).expect("admissible initial data").to_array());
        };
        let put2 = |w: Primitive2D, out: &mut [f64]| {
            out.copy_from_slice(&prim_to_cons_2d(&w, &gas).expect("admissible initial data").to_array());
        };
        match &self.ic {
            InitialCondition::Scalar { profile } => out[0] = profile.eval(x),
            InitialCondition::Riemann1D { left, right, x0 } => put1(if x < *x0 { *left } else { *right }, out),
            InitialCondition::ShockEntropy { left, x0, amplitude, wavenumber } => {
                let w =
                    if x < *x0 { *left } else { Primitive1D::new(1.0 + amplitude * (wavenumber * x).sin(), 0.0, 1.0) };
                put1(w, out)
            }
            InitialCondition::Riemann2D { quadrants } => {
                let [sx, sy] = quadrants.split;
                let k = match (x >= sx, y >= sy) {
                    (true, true) => 0,
                    (false, true) => 1,
                    (false, false) => 2,
                    (true, false) => 3,
                };
                put2(quadrants.states[k], out)
            }
            InitialCondition::RayleighTaylor { amplitude } => {
                let (rho, p) = if y < 0.5 { (2.0, 2.0 * y + 1.0) } else { (1.0, y + 1.5) };
                let a = gas.sound_speed(rho, p);
                put2(Primitive2D::new(rho, 0.0, -amplitude * a * (8.0 * PI * x).cos(), p), out)
            }
            InitialCondition::DoubleMach { preshock, postshock, x0, angle_deg } => {
                let shock_x = x0 + y / angle_deg.to_radians().tan();
                put2(if x < shock_x { *postshock } else { *preshock }, out)
            }
        }
    }

    pub fn profile(&self) -> Option<ScalarProfile> {
        match self.ic {
            InitialCondition::Scalar { profile } => Some(profile),
            _ => None,
        }
    }
}

/// Exact solution of a scalar problem at `(x, t)`.
///
/// Linear advection transports the initial profile with periodic wrap.
/// Burgers is solved along characteristics, `u = u0(x - u t)`, by Newton's
/// method; queries after characteristics cross are rejected.
pub fn exact_solution(spec: &ProblemSpec, x: f64, t: f64) -> Result<f64, Error> {
    let profile = spec.profile().ok_or_else(|| Error::Config(format!("{} has no scalar exact solution", spec.name)))?;
    match spec.model {
        Model::Scalar { flux: FluxModel::LinearAdvection { speed } } => Ok(profile.eval(x - speed * t)),
        Model::Scalar { flux: FluxModel::Burgers } => burgers_characteristic(profile, x, t),
        _ => unreachable!("scalar initial condition with a system model"),
    }
}

fn burgers_characteristic(profile: ScalarProfile, x: f64, t: f64) -> Result<f64, Error> {
    if t == 0.0 {
        return Ok(profile.eval(x));
    }
    // Characteristics cross once t * max(-u0') reaches 1.
    let steepest = (0..4096).map(|k| -profile.derivative(-1.0 + 2.0 * k as f64 / 4096.0)).fold(0.0f64, f64::max);
    if t * steepest >= 1.0 {
        return Err(Error::NonConvergence(format!(
            "Burgers characteristics have crossed by t = {t} (breaking time {})",
            1.0 / steepest
        )));
    }
    let mut u = profile.eval(x);
    for _ in 0..100 {
        let xi = x - u * t;
        let residual = u - profile.eval(xi);
        let slope = 1.0 + t * profile.derivative(xi);
        let step = residual / slope;
        u -= step;
        if step.abs() <= 1e-13 * u.abs().max(1.0) {
            return Ok(u);
        }
    }
    Err(Error::NonConvergence(format!("characteristic solve at x = {x}, t = {t}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_is_complete_and_serializable() {
        for name in PROBLEM_NAMES {
            let spec = make_problem(name).unwrap();
            assert_eq!(spec.name, name);
            assert!(spec.t_end > 0.0);
            let json = serde_json::to_string(&spec).unwrap();
            let back: ProblemSpec = serde_json::from_str(&json).unwrap();
            assert_eq!(back, spec, "{name}");
        }
        assert!(matches!(make_problem("kelvin_helmholtz"), Err(Error::UnknownProblem(_))));
    }

    #[test]
    fn critical_point_profiles() {
        // sin(pi x - sin(pi x)/pi) is flat where cos of its argument vanishes
        // but pi - cos(pi x) does not.
        let p = ScalarProfile::SinCubed;
        assert_eq!(p.derivative(0.0), 0.0);
        assert!((ScalarProfile::Sin.derivative(0.5)).abs() < 1e-15);
        assert!((ScalarProfile::SquareWave.eval(-0.5) - 1.0).abs() == 0.0);
        assert_eq!(ScalarProfile::SquareWave.eval(0.5), 0.0);
        assert_eq!(ScalarProfile::PiecewiseSine.eval(0.0), 1.0);
    }

    #[test]
    fn advection_period() {
        let spec = make_problem("advection_sin").unwrap();
        for x in [-0.95, -0.3, 0.1, 0.77] {
            let e = exact_solution(&spec, x, 2.0).unwrap();
            assert!((e - (PI * x).sin()).abs() < 1e-14);
        }
    }

    #[test]
    fn burgers_characteristics() {
        let spec = make_problem("burgers_sin").unwrap();
        assert_eq!(exact_solution(&spec, 0.3, 0.0).unwrap(), -(PI * 0.3).sin());
        let (x, t) = (0.3, 0.1);
        let u = exact_solution(&spec, x, t).unwrap();
        // Independent check: fixed-point iteration of u = u0(x - u t).
        let mut v = 0.0f64;
        for _ in 0..200 {
            v = -(PI * (x - v * t)).sin();
        }
        assert!((u - v).abs() < 1e-12, "{u} vs {v}");
        assert!(matches!(exact_solution(&spec, 0.0, 1.5), Err(Error::NonConvergence(_))));
    }

    #[test]
    fn mach_ten_postshock() {
        let w = postshock_state(&Primitive2D::new(1.4, 0.0, 0.0, 1.0), 10.0, 1.4, 60.0);
        assert!((w.rho - 8.0).abs() < 1e-12);
        assert!((w.p - 116.5).abs() < 1e-10);
        assert!((w.u - 8.25 * 30f64.to_radians().cos()).abs() < 1e-12);
        assert!((w.v + 8.25 * 0.5).abs() < 1e-12);
    }

    #[test]
    fn riemann2d_data_is_diagonally_symmetric() {
        let spec = make_problem("riemann2d").unwrap();
        let (mut a, mut b) = ([0.0; 4], [0.0; 4]);
        for (x, y) in [(0.3, 0.9), (0.1, 0.2), (0.95, 0.85), (0.85, 0.5)] {
            spec.initial_state(x, y, &mut a);
            spec.initial_state(y, x, &mut b);
            assert_eq!(a, [b[0], b[2], b[1], b[3]]);
        }
    }
}
