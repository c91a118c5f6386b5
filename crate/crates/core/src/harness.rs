//! Run orchestration: the time loop, error norms, convergence tables and
//! scheme comparisons.

use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::euler::{
    check_admissible_1d, check_admissible_2d, cons_to_prim, cons_to_prim_2d, euler_rhs_1d, euler_rhs_2d, Conserved1D,
    Conserved2D, EulerOptions, GasModel,
};
use crate::grid::{Grid1D, Grid2D, GHOST};
use crate::kernels::{SchemeParams, Variant};
use crate::problems::boundary::{GhostContext, InitialFn};
use crate::problems::{
    exact_solution, make_problem, reference_solution, Dim, ExactPolicy, InitialCondition, Model, ProblemSpec,
    RiemannSolution,
};
use crate::scalar::scalar_rhs_padded;
use crate::time::{compute_dt, step, DtMode, DtPolicy, Integrator, StageBuffers};

/// `(L1, Linf)` of `numeric - exact`, with `L1 = dx * sum |e|`.
pub fn error_norms(numeric: &[f64], exact: &[f64], dx: f64) -> Result<(f64, f64), Error> {
    if numeric.len() != exact.len() {
        return Err(Error::LengthMismatch(numeric.len(), exact.len()));
    }
    let (mut sum, mut max) = (0.0f64, 0.0f64);
    for (a, b) in numeric.iter().zip(exact) {
        let e = (a - b).abs();
        sum += e;
        max = max.max(e);
    }
    Ok((dx * sum, max))
}

/// What to run and how.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub problem: String,
    pub scheme: SchemeParams,
    /// `[nx, ny]`; `None` uses the problem's default grid. `ny` is ignored in 1D.
    pub n: Option<[usize; 2]>,
    /// `None` uses the problem's CFL number.
    pub cfl: Option<f64>,
    pub dt_mode: DtMode,
    /// `None` picks RK4 for convergence stepping and TVD-RK3 otherwise.
    pub integrator: Option<Integrator>,
    pub t_end: Option<f64>,
    /// Extra output times; the step size is truncated to hit each exactly.
    pub snapshot_times: Vec<f64>,
    /// Record one [`StepDiagnostics`] per step.
    pub diagnostics: bool,
    /// Blend Euler fluxes towards Lax-Friedrichs where needed to keep each
    /// stage's density and pressure positive. Ignored for scalar problems.
    #[serde(default)]
    pub positivity_limiter: bool,
}

impl RunConfig {
    pub fn new(problem: &str, scheme: SchemeParams) -> Self {
        Self {
            problem: problem.to_string(),
            scheme,
            n: None,
            cfl: None,
            dt_mode: DtMode::Cfl,
            integrator: None,
            t_end: None,
            snapshot_times: Vec::new(),
            diagnostics: false,
            positivity_limiter: false,
        }
    }

    pub fn with_n(mut self, n: usize) -> Self {
        self.n = Some([n, 1]);
        self
    }

    pub fn with_n2(mut self, nx: usize, ny: usize) -> Self {
        self.n = Some([nx, ny]);
        self
    }

    pub fn with_t_end(mut self, t: f64) -> Self {
        self.t_end = Some(t);
        self
    }
}

/// A discrete solution on the problem's grid.
#[derive(Debug, Clone, PartialEq)]
pub enum Solution {
    Scalar { grid: Grid1D, u: Vec<f64> },
    Euler1D { grid: Grid1D, gas: GasModel, states: Vec<[f64; 3]> },
    Euler2D { grid: Grid2D, gas: GasModel, states: Vec<[f64; 4]> },
}

impl Solution {
    /// The compared quantity: `u` for scalar problems, density for Euler.
    pub fn primary(&self) -> Vec<f64> {
        match self {
            Solution::Scalar { u, .. } => u.clone(),
            Solution::Euler1D { states, .. } => states.iter().map(|s| s[0]).collect(),
            Solution::Euler2D { states, .. } => states.iter().map(|s| s[0]).collect(),
        }
    }

    /// Named output columns, excluding coordinates: `u`, or `rho,u,p`, or `rho,u,v,p`.
    pub fn columns(&self) -> (Vec<&'static str>, Vec<Vec<f64>>) {
        match self {
            Solution::Scalar { u, .. } => (vec!["u"], vec![u.clone()]),
            Solution::Euler1D { gas, states, .. } => {
                let mut cols: Vec<Vec<f64>> = (0..3).map(|_| Vec::with_capacity(states.len())).collect();
                for s in states {
                    let w = cons_to_prim(&Conserved1D::from_array(*s), gas).unwrap_or(crate::euler::Primitive1D::new(
                        f64::NAN,
                        f64::NAN,
                        f64::NAN,
                    ));
                    cols[0].push(w.rho);
                    cols[1].push(w.u);
                    cols[2].push(w.p);
                }
                (vec!["rho", "u", "p"], cols)
            }
            Solution::Euler2D { gas, states, .. } => {
                let mut cols: Vec<Vec<f64>> = (0..4).map(|_| Vec::with_capacity(states.len())).collect();
                for s in states {
                    let w = cons_to_prim_2d(&Conserved2D::from_array(*s), gas)
                        .unwrap_or(crate::euler::Primitive2D::new(f64::NAN, f64::NAN, f64::NAN, f64::NAN));
                    cols[0].push(w.rho);
                    cols[1].push(w.u);
                    cols[2].push(w.v);
                    cols[3].push(w.p);
                }
                (vec!["rho", "u", "v", "p"], cols)
            }
        }
    }

    /// Coordinates of every cell: x centres in 1D, `(x, y)` row-major in 2D.
    pub fn coordinates(&self) -> (Vec<f64>, Option<Vec<f64>>) {
        match self {
            Solution::Scalar { grid, .. } | Solution::Euler1D { grid, .. } => (grid.centers(), None),
            Solution::Euler2D { grid, .. } => {
                let (xc, yc) = (grid.x.centers(), grid.y.centers());
                let xs = yc.iter().flat_map(|_| xc.iter().copied()).collect();
                let ys = yc.iter().flat_map(|&y| std::iter::repeat_n(y, xc.len())).collect();
                (xs, Some(ys))
            }
        }
    }

    /// Cell-volume-weighted sum of each conserved component.
    pub fn conserved_totals(&self) -> Vec<f64> {
        fn totals<const N: usize>(states: &[[f64; N]], vol: f64) -> Vec<f64> {
            let mut t = vec![0.0; N];
            for s in states {
                for (a, b) in t.iter_mut().zip(s) {
                    *a += b;
                }
            }
            t.iter().map(|x| x * vol).collect()
        }
        match self {
            Solution::Scalar { grid, u } => vec![u.iter().sum::<f64>() * grid.dx()],
            Solution::Euler1D { grid, states, .. } => totals(states, grid.dx()),
            Solution::Euler2D { grid, states, .. } => totals(states, grid.x.dx() * grid.y.dx()),
        }
    }

    pub fn dx(&self) -> f64 {
        match self {
            Solution::Scalar { grid, .. } | Solution::Euler1D { grid, .. } => grid.dx(),
            Solution::Euler2D { grid, .. } => grid.x.dx(),
        }
    }
}

/// Per-step record of a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepDiagnostics {
    pub step: usize,
    /// Time at the end of the step.
    pub t: f64,
    pub dt: f64,
    /// Maximum wave speed used for the step size.
    pub alpha: f64,
    pub totals: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub spec: ProblemSpec,
    pub config: RunConfig,
    pub solution: Solution,
    pub t: f64,
    pub steps: usize,
    pub snapshots: Vec<(f64, Solution)>,
    pub diagnostics: Vec<StepDiagnostics>,
}

/// Runs a catalog problem.
pub fn run_simulation(cfg: &RunConfig) -> Result<RunOutput, Error> {
    let spec = make_problem(&cfg.problem)?;
    run_spec(&spec, cfg)
}

/// Interior-only flat state and its shape.
enum Layout {
    Line { grid: Grid1D, ncomp: usize },
    Plane { grid: Grid2D },
}

/// Runs an arbitrary problem description, e.g. a modified catalog entry.
pub fn run_spec(spec: &ProblemSpec, cfg: &RunConfig) -> Result<RunOutput, Error> {
    cfg.scheme.validate()?;
    let t_end = cfg.t_end.unwrap_or(spec.t_end);
    if !(t_end > 0.0 && t_end.is_finite()) {
        return Err(Error::Config(format!("t_end must be positive, got {t_end}")));
    }
    let cfl = cfg.cfl.unwrap_or(spec.cfl);
    let policy = DtPolicy { mode: cfg.dt_mode, cfl };
    let integrator = cfg.integrator.unwrap_or(match cfg.dt_mode {
        DtMode::Convergence => Integrator::Rk4,
        DtMode::Cfl => Integrator::Rk3,
    });
    match (spec.dim, spec.model) {
        (Dim::One, Model::Scalar { .. } | Model::Euler1D { .. }) | (Dim::Two, Model::Euler2D { .. }) => {}
        _ => return Err(Error::Config(format!("{}: model does not match dimensionality", spec.name))),
    }
    let [nx, ny] = cfg.n.unwrap_or(spec.default_n);
    let [x_lo, x_hi, _, _] = spec.bounds;
    let layout = match spec.dim {
        Dim::One => Layout::Line { grid: Grid1D::new(nx, x_lo, x_hi)?, ncomp: spec.components() },
        Dim::Two => Layout::Plane { grid: Grid2D::new(nx, ny, spec.bounds)? },
    };
    let mut snaps: Vec<f64> = cfg.snapshot_times.iter().copied().filter(|&t| t > 0.0 && t < t_end).collect();
    snaps.sort_by(f64::total_cmp);
    snaps.dedup();

    let init = |x: f64, y: f64, out: &mut [f64]| spec.initial_state(x, y, out);
    let initial: InitialFn<'_> = &init;

    // Initial data and padded work buffer.
    let (mut u, mut padded) = match &layout {
        Layout::Line { grid, ncomp } => {
            let mut u = vec![0.0; grid.n * ncomp];
            for (j, x) in grid.centers().into_iter().enumerate() {
                spec.initial_state(x, 0.0, &mut u[j * ncomp..(j + 1) * ncomp]);
            }
            (u, vec![0.0; (grid.n + 2 * GHOST) * ncomp])
        }
        Layout::Plane { grid } => {
            let (xc, yc) = (grid.x.centers(), grid.y.centers());
            let mut u = vec![0.0; grid.nx() * grid.ny() * 4];
            for (j, &y) in yc.iter().enumerate() {
                for (i, &x) in xc.iter().enumerate() {
                    let k = (j * grid.nx() + i) * 4;
                    spec.initial_state(x, y, &mut u[k..k + 4]);
                }
            }
            (u, vec![0.0; grid.px() * grid.py() * 4])
        }
    };
    let snapshot_of = |u: &[f64]| -> Solution {
        match (&layout, spec.model) {
            (Layout::Line { grid, .. }, Model::Scalar { .. }) => Solution::Scalar { grid: *grid, u: u.to_vec() },
            (Layout::Line { grid, .. }, Model::Euler1D { gas }) => {
                Solution::Euler1D { grid: *grid, gas, states: u.as_chunks::<3>().0.to_vec() }
            }
            (Layout::Plane { grid }, Model::Euler2D { gas, .. }) => {
                Solution::Euler2D { grid: *grid, gas, states: u.as_chunks::<4>().0.to_vec() }
            }
            _ => unreachable!("layout matches model"),
        }
    };

    let scheme = cfg.scheme;
    // Step size seen by the flux limiter; set before each step.
    let current_dt = std::cell::Cell::new(0.0);
    let limiter = cfg.positivity_limiter;
    let mut rhs = |t: f64, state: &[f64], out: &mut [f64]| -> Result<(), Error> {
        let ctx = GhostContext { t, initial: Some(initial) };
        let positivity_dt = limiter.then(|| current_dt.get());
        match (&layout, spec.model) {
            (Layout::Line { grid, ncomp }, model) => {
                let off = GHOST * ncomp;
                padded[off..off + state.len()].copy_from_slice(state);
                match model {
                    Model::Scalar { flux } => {
                        scalar_rhs_padded(&mut padded, grid, &flux, &scheme, &spec.bcs, &ctx, out)
                    }
                    Model::Euler1D { gas } => euler_rhs_1d(
                        &mut padded,
                        grid,
                        &spec.bcs,
                        &ctx,
                        &scheme,
                        &gas,
                        EulerOptions { gravity: false, positivity_dt },
                        out,
                    ),
                    Model::Euler2D { .. } => unreachable!(),
                }
            }
            (Layout::Plane { grid }, Model::Euler2D { gas, gravity }) => {
                let (nx, px) = (grid.nx(), grid.px());
                for j in 0..grid.ny() {
                    let dst = ((j + GHOST) * px + GHOST) * 4;
                    padded[dst..dst + nx * 4].copy_from_slice(&state[j * nx * 4..(j + 1) * nx * 4]);
                }
                euler_rhs_2d(
                    &mut padded,
                    grid,
                    &spec.bcs,
                    &ctx,
                    &scheme,
                    &gas,
                    EulerOptions { gravity, positivity_dt },
                    out,
                )
            }
            _ => unreachable!(),
        }
    };

    let speed = |u: &[f64]| -> (f64, f64) {
        match (&layout, spec.model) {
            (Layout::Line { grid, .. }, Model::Scalar { flux }) => {
                let a = u.iter().map(|&v| flux.wave_speed(v)).fold(0.0, f64::max);
                (a, grid.dx())
            }
            (Layout::Line { grid, .. }, Model::Euler1D { gas }) => {
                let a = u
                    .as_chunks::<3>()
                    .0
                    .iter()
                    .map(|s| {
                        let p = gas.pressure_1d(s);
                        (s[1] / s[0]).abs() + gas.sound_speed(s[0], p)
                    })
                    .fold(0.0, f64::max);
                (a, grid.dx())
            }
            (Layout::Plane { grid }, Model::Euler2D { gas, .. }) => {
                let (mut ax, mut ay) = (0.0f64, 0.0f64);
                for s in u.as_chunks::<4>().0 {
                    let c = gas.sound_speed(s[0], gas.pressure_2d(s));
                    ax = ax.max((s[1] / s[0]).abs() + c);
                    ay = ay.max((s[2] / s[0]).abs() + c);
                }
                let (dx, dy) = (grid.x.dx(), grid.y.dx());
                match policy.mode {
                    // dt = cfl / (ax/dx + ay/dy), expressed with unit spacing.
                    DtMode::Cfl => (ax / dx + ay / dy, 1.0),
                    DtMode::Convergence => (ax.max(ay), dx.min(dy)),
                }
            }
            _ => unreachable!(),
        }
    };
    let check = |u: &[f64], step: usize| -> Result<(), Error> {
        let r = match (&layout, spec.model) {
            (_, Model::Scalar { .. }) => match u.iter().position(|v| !v.is_finite()) {
                Some(j) => Err(Error::NonFinite { location: format!("cell {j}") }),
                None => Ok(()),
            },
            (_, Model::Euler1D { gas }) => check_admissible_1d(u.as_chunks::<3>().0, &gas),
            (Layout::Plane { grid }, Model::Euler2D { gas, .. }) => {
                check_admissible_2d(u.as_chunks::<4>().0, grid.nx(), &gas)
            }
            _ => unreachable!(),
        };
        r.map_err(|e| at_step(e, step))
    };

    let mut buf = StageBuffers::default();
    let mut t = 0.0;
    let mut steps = 0usize;
    let mut snapshots = Vec::new();
    let mut diagnostics = Vec::new();
    let mut next_snap = snaps.into_iter().peekable();
    while t < t_end {
        let target = next_snap.peek().copied().unwrap_or(t_end);
        let (alpha, h) = speed(&u);
        let dt = compute_dt(&policy, h, alpha, t, target).map_err(|e| at_step(e, steps + 1))?;
        current_dt.set(dt);
        step(integrator, &mut rhs, t, &mut u, dt, &mut buf).map_err(|e| at_step(e, steps + 1))?;
        steps += 1;
        t = if dt == target - t { target } else { t + dt };
        check(&u, steps)?;
        if cfg.diagnostics {
            diagnostics.push(StepDiagnostics { step: steps, t, dt, alpha, totals: snapshot_of(&u).conserved_totals() });
        }
        if t == target && next_snap.peek().is_some() {
            next_snap.next();
            snapshots.push((t, snapshot_of(&u)));
        }
    }
    Ok(RunOutput {
        spec: spec.clone(),
        config: cfg.clone(),
        solution: snapshot_of(&u),
        t,
        steps,
        snapshots,
        diagnostics,
    })
}

fn at_step(e: Error, step: usize) -> Error {
    match e {
        Error::NonFinite { location } => Error::NonFinite { location: format!("step {step}, {location}") },
        Error::Inadmissible { location, detail } => {
            Error::Inadmissible { location: format!("step {step}, {location}"), detail }
        }
        other => other,
    }
}

/// One line of a convergence table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub l1: f64,
    pub linf: f64,
    pub l1_order: Option<f64>,
    pub linf_order: Option<f64>,
}

/// Fills in `log(e_prev / e) / log(N / N_prev)` for every row after the first.
pub fn fill_orders(rows: &mut [ConvergenceRow]) {
    for k in 0..rows.len() {
        if k == 0 {
            rows[0].l1_order = None;
            rows[0].linf_order = None;
            continue;
        }
        let ratio = (rows[k].n as f64 / rows[k - 1].n as f64).ln();
        rows[k].l1_order = Some((rows[k - 1].l1 / rows[k].l1).ln() / ratio);
        rows[k].linf_order = Some((rows[k - 1].linf / rows[k].linf).ln() / ratio);
    }
}

/// Settings shared by every row of a convergence table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceOptions {
    pub dt_mode: DtMode,
    pub integrator: Integrator,
    pub cfl: Option<f64>,
    pub t_end: Option<f64>,
}

impl Default for ConvergenceOptions {
    fn default() -> Self {
        Self { dt_mode: DtMode::Convergence, integrator: Integrator::Rk4, cfl: None, t_end: None }
    }
}

/// Errors against the analytic solution for each grid in `ns`.
pub fn convergence_table(
    problem: &str,
    scheme: &SchemeParams,
    ns: &[usize],
    opts: &ConvergenceOptions,
) -> Result<Vec<ConvergenceRow>, Error> {
    let spec = make_problem(problem)?;
    if spec.policy != ExactPolicy::Analytic && !spec.is_scalar() {
        return Err(Error::Config(format!("{problem} has no analytic solution")));
    }
    if ns.is_empty() || ns.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Config("grid sizes must be a nonempty increasing list".into()));
    }
    let t_end = opts.t_end.unwrap_or(spec.t_end);
    let mut rows = ns
        .par_iter()
        .map(|&n| {
            let cfg = RunConfig {
                n: Some([n, 1]),
                cfl: opts.cfl,
                dt_mode: opts.dt_mode,
                integrator: Some(opts.integrator),
                t_end: Some(t_end),
                ..RunConfig::new(problem, *scheme)
            };
            let out = run_spec(&spec, &cfg)?;
            let Solution::Scalar { grid, u } = &out.solution else { unreachable!("scalar problem") };
            let exact =
                grid.centers().iter().map(|&x| exact_solution(&spec, x, t_end)).collect::<Result<Vec<_>, _>>()?;
            let (l1, linf) = error_norms(u, &exact, grid.dx())?;
            Ok(ConvergenceRow { n, l1, linf, l1_order: None, linf_order: None })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    fill_orders(&mut rows);
    Ok(rows)
}

/// One scheme's result in a comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareRow {
    pub variant: Variant,
    pub n: usize,
    pub l1: Option<f64>,
    pub linf: Option<f64>,
    /// Set when this variant's run failed.
    pub error: Option<String>,
}

#[derive(Debug, Clone, Default)]
pub struct CompareOptions {
    pub cfl: Option<f64>,
    pub t_end: Option<f64>,
    /// Fine grid of the reference solution, for problems judged against one.
    pub reference_n: Option<usize>,
    pub cache_dir: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub struct Comparison {
    pub problem: String,
    /// `"u"` for scalar problems, `"rho"` for Euler.
    pub quantity: &'static str,
    pub x: Vec<f64>,
    pub reference: Vec<f64>,
    pub rows: Vec<CompareRow>,
    /// Profile of the compared quantity for each variant that succeeded.
    pub profiles: Vec<(Variant, Vec<f64>)>,
}

/// Runs every scheme on the same 1D grid and measures it against the exact
/// or reference solution. A failed variant is reported in its row.
pub fn compare_schemes(
    problem: &str,
    schemes: &[SchemeParams],
    n: usize,
    opts: &CompareOptions,
) -> Result<Comparison, Error> {
    let spec = make_problem(problem)?;
    if spec.dim != Dim::One {
        return Err(Error::Config(format!("{problem} is two-dimensional; comparisons are 1D only")));
    }
    let t_end = opts.t_end.unwrap_or(spec.t_end);
    let grid = Grid1D::new(n, spec.bounds[0], spec.bounds[1])?;
    let x = grid.centers();
    let (quantity, reference) = comparison_reference(&spec, &x, t_end, n, opts)?;

    let results: Vec<(CompareRow, Option<Vec<f64>>)> = schemes
        .par_iter()
        .map(|s| {
            let cfg = RunConfig { n: Some([n, 1]), cfl: opts.cfl, t_end: Some(t_end), ..RunConfig::new(problem, *s) };
            match run_spec(&spec, &cfg).and_then(|out| {
                let prof = out.solution.primary();
                error_norms(&prof, &reference, grid.dx()).map(|e| (e, prof))
            }) {
                Ok(((l1, linf), prof)) => {
                    (CompareRow { variant: s.variant, n, l1: Some(l1), linf: Some(linf), error: None }, Some(prof))
                }
                Err(e) => {
                    (CompareRow { variant: s.variant, n, l1: None, linf: None, error: Some(e.to_string()) }, None)
                }
            }
        })
        .collect();
    let mut rows = Vec::new();
    let mut profiles = Vec::new();
    for (row, prof) in results {
        if let Some(p) = prof {
            profiles.push((row.variant, p));
        }
        rows.push(row);
    }
    Ok(Comparison { problem: problem.to_string(), quantity, x, reference, rows, profiles })
}

fn comparison_reference(
    spec: &ProblemSpec,
    x: &[f64],
    t_end: f64,
    n: usize,
    opts: &CompareOptions,
) -> Result<(&'static str, Vec<f64>), Error> {
    if spec.is_scalar() {
        if let Ok(v) = x.iter().map(|&xi| exact_solution(spec, xi, t_end)).collect::<Result<Vec<_>, _>>() {
            return Ok(("u", v));
        }
    }
    let quantity = if spec.is_scalar() { "u" } else { "rho" };
    match (&spec.ic, spec.policy) {
        (InitialCondition::Riemann1D { left, right, x0 }, ExactPolicy::ExactRiemann) => {
            let sol = RiemannSolution::solve(left, right, &spec.gas().unwrap_or_default())?;
            Ok((quantity, x.iter().map(|&xi| sol.sample((xi - x0) / t_end).rho).collect()))
        }
        _ => {
            let fine_n = opts.reference_n.unwrap_or(10 * n.max(spec.default_n[0]));
            let mut fine = spec.clone();
            fine.t_end = t_end;
            let reference = reference_solution(&fine, fine_n, opts.cache_dir.as_deref())?;
            Ok((quantity, reference.sample_column(0, x)))
        }
    }
}
