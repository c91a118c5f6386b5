//! The `weno-lab` command line.
//!
//! Exit codes: 0 success, 2 usage or configuration error, 3 numerical
//! failure, 4 I/O failure.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use crate::harness::{
    compare_schemes, convergence_table, run_simulation, CompareOptions, ConvergenceOptions, RunConfig,
};
use crate::io::{
    emit_plot_script, format_compare_csv, format_table_csv, write_columns_csv, write_compare_csv, write_field_csv,
    write_table_csv, PlotKind,
};
use crate::kernels::{SchemeParams, Variant};
use crate::problems::{make_problem, Dim, PROBLEM_NAMES};
use crate::time::{DtMode, Integrator};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "weno-lab", version, about = "Fifth-order WENO schemes and their benchmark problems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Error and order table against the analytic solution.
    Convergence(CommonArgs),
    /// Run a 1D problem and write its final profile.
    Solve1d(CommonArgs),
    /// Run a 2D problem and write its final field.
    Solve2d(CommonArgs),
    /// Run several schemes on one 1D grid and tabulate their errors.
    Compare(CommonArgs),
    /// Print the problem catalog.
    ListProblems {
        /// Print full problem descriptions as JSON.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    #[arg(long)]
    pub problem: Option<String>,
    /// js, m, z, ns, p or mp; `compare` also takes a comma list or `all`.
    #[arg(long)]
    pub scheme: Option<String>,
    /// Grid size, or a comma list for `convergence`.
    #[arg(long)]
    pub n: Option<String>,
    #[arg(long)]
    pub nx: Option<usize>,
    #[arg(long)]
    pub ny: Option<usize>,
    #[arg(long)]
    pub cfl: Option<f64>,
    #[arg(long = "t-end")]
    pub t_end: Option<f64>,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long)]
    pub xi: Option<f64>,
    #[arg(long)]
    pub delta: Option<f64>,
    /// Exponent of the Z weights, 1 or 2.
    #[arg(long)]
    pub zp: Option<u8>,
    /// cfl or convergence.
    #[arg(long = "dt-mode")]
    pub dt_mode: Option<String>,
    /// rk3 or rk4; defaults to rk4 with convergence stepping, rk3 otherwise.
    #[arg(long)]
    pub integrator: Option<String>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write plotting scripts next to the CSVs.
    #[arg(long = "emit-plots")]
    pub emit_plots: bool,
    /// Contour levels of 2D plots.
    #[arg(long)]
    pub levels: Option<usize>,
    /// Limit Euler fluxes to keep density and pressure positive (solve1d/solve2d).
    #[arg(long = "positivity-limiter")]
    pub positivity_limiter: bool,
    /// Fine grid of the WENO-JS reference solution.
    #[arg(long = "reference-n")]
    pub reference_n: Option<usize>,
    /// `key=value` file with the same keys as the flags; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

fn parse<T: FromStr>(key: &str, v: &str) -> Result<T, Error> {
    v.trim().parse().map_err(|_| usage(format!("invalid value `{v}` for {key}")))
}

impl CommonArgs {
    /// Fills unset fields from a `key=value` file.
    pub fn merge_config_file(&mut self, path: &Path) -> Result<(), Error> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        for (k, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
                path: path.into(),
                detail: format!("line {}: expected key=value", k + 1),
            })?;
            let (key, value) = (key.trim(), value.trim());
            let s = || Some(value.to_string());
            match key {
                "problem" => self.problem = self.problem.take().or_else(s),
                "scheme" => self.scheme = self.scheme.take().or_else(s),
                "n" => self.n = self.n.take().or_else(s),
                "nx" => self.nx = self.nx.or(Some(parse(key, value)?)),
                "ny" => self.ny = self.ny.or(Some(parse(key, value)?)),
                "cfl" => self.cfl = self.cfl.or(Some(parse(key, value)?)),
                "t-end" => self.t_end = self.t_end.or(Some(parse(key, value)?)),
                "eps" => self.eps = self.eps.or(Some(parse(key, value)?)),
                "xi" => self.xi = self.xi.or(Some(parse(key, value)?)),
                "delta" => self.delta = self.delta.or(Some(parse(key, value)?)),
                "zp" => self.zp = self.zp.or(Some(parse(key, value)?)),
                "dt-mode" => self.dt_mode = self.dt_mode.take().or_else(s),
                "integrator" => self.integrator = self.integrator.take().or_else(s),
                "out" => self.out = self.out.take().or_else(|| Some(value.into())),
                "emit-plots" => self.emit_plots |= parse::<bool>(key, value)?,
                "positivity-limiter" => self.positivity_limiter |= parse::<bool>(key, value)?,
                "levels" => self.levels = self.levels.or(Some(parse(key, value)?)),
                "reference-n" => self.reference_n = self.reference_n.or(Some(parse(key, value)?)),
                other => return Err(usage(format!("{}: unknown key `{other}`", path.display()))),
            }
        }
        Ok(())
    }

    fn problem(&self) -> Result<String, Error> {
        let name = self.problem.clone().ok_or_else(|| usage("--problem is required"))?;
        make_problem(&name)?;
        Ok(name)
    }

    /// Scheme parameters for `variant`, with the flag overrides applied.
    fn params_for(&self, variant: Variant) -> Result<SchemeParams, Error> {
        let mut p = SchemeParams::new(variant);
        if let Some(e) = self.eps {
            p.eps = e;
        }
        if let Some(x) = self.xi {
            p.xi = x;
        }
        if let Some(d) = self.delta {
            p.delta = d;
        }
        if let Some(z) = self.zp {
            p.zp = z;
        }
        p.validate()?;
        Ok(p)
    }

    fn scheme(&self) -> Result<SchemeParams, Error> {
        let v = match &self.scheme {
            Some(s) => s.parse()?,
            None => Variant::Mp,
        };
        self.params_for(v)
    }

    fn schemes(&self) -> Result<Vec<SchemeParams>, Error> {
        let variants: Vec<Variant> = match self.scheme.as_deref() {
            None | Some("all") => Variant::ALL.to_vec(),
            Some(list) => list.split(',').map(str::parse).collect::<Result<_, _>>()?,
        };
        variants.into_iter().map(|v| self.params_for(v)).collect()
    }

    fn ns(&self) -> Result<Option<Vec<usize>>, Error> {
        self.n.as_deref().map(|s| s.split(',').map(|v| parse("--n", v)).collect()).transpose()
    }

    fn single_n(&self) -> Result<Option<usize>, Error> {
        match self.ns()? {
            None => Ok(None),
            Some(v) if v.len() == 1 => Ok(Some(v[0])),
            Some(_) => Err(usage("--n takes a single value here")),
        }
    }

    fn dt_mode(&self, default: DtMode) -> Result<DtMode, Error> {
        match self.dt_mode.as_deref() {
            None => Ok(default),
            Some("cfl") => Ok(DtMode::Cfl),
            Some("convergence") => Ok(DtMode::Convergence),
            Some(other) => Err(usage(format!("--dt-mode must be cfl or convergence, got `{other}`"))),
        }
    }

    fn integrator(&self) -> Result<Option<Integrator>, Error> {
        match self.integrator.as_deref() {
            None => Ok(None),
            Some("rk3") => Ok(Some(Integrator::Rk3)),
            Some("rk4") => Ok(Some(Integrator::Rk4)),
            Some(other) => Err(usage(format!("--integrator must be rk3 or rk4, got `{other}`"))),
        }
    }

    fn check_common(&self) -> Result<(), Error> {
        if let Some(c) = self.cfl {
            if !(c > 0.0 && c <= 1.0) {
                return Err(usage(format!("--cfl must lie in (0, 1], got {c}")));
            }
        }
        if let Some(t) = self.t_end {
            if !(t > 0.0 && t.is_finite()) {
                return Err(usage(format!("--t-end must be positive, got {t}")));
            }
        }
        if self.levels == Some(0) {
            return Err(usage("--levels must be positive"));
        }
        Ok(())
    }

    fn out_dir(&self) -> PathBuf {
        self.out.clone().unwrap_or_else(|| PathBuf::from("."))
    }
}

/// A fully validated command, ready to run.
#[derive(Debug, Clone, PartialEq)]
pub enum Plan {
    Convergence {
        problem: String,
        scheme: SchemeParams,
        ns: Vec<usize>,
        opts: ConvergenceOptions,
        out: PathBuf,
    },
    Solve {
        config: RunConfig,
        dim: Dim,
        out: PathBuf,
        emit_plots: bool,
        levels: usize,
    },
    Compare {
        problem: String,
        schemes: Vec<SchemeParams>,
        n: usize,
        opts: CompareOptionsPlan,
        out: PathBuf,
        emit_plots: bool,
    },
    ListProblems {
        json: bool,
    },
}

/// Comparison settings as parsed; the cache directory comes from the environment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompareOptionsPlan {
    pub cfl: Option<f64>,
    pub t_end: Option<f64>,
    pub reference_n: Option<usize>,
}

/// Validates a parsed command line. Every flag is checked here, before any
/// computation starts.
pub fn plan(cli: Cli) -> Result<Plan, Error> {
    let with_config = |mut a: CommonArgs| -> Result<CommonArgs, Error> {
        if let Some(path) = a.config.clone() {
            a.merge_config_file(&path)?;
        }
        a.check_common()?;
        Ok(a)
    };
    match cli.command {
        Command::ListProblems { json } => Ok(Plan::ListProblems { json }),
        Command::Convergence(a) => {
            let a = with_config(a)?;
            let problem = a.problem()?;
            let spec = make_problem(&problem)?;
            if !spec.is_scalar() {
                return Err(usage(format!("{problem} has no analytic solution; use solve1d or compare")));
            }
            let ns = a.ns()?.unwrap_or_else(|| vec![10, 20, 40, 80, 160, 320]);
            if ns.iter().any(|&n| n < 6) || ns.windows(2).any(|w| w[1] <= w[0]) {
                return Err(usage("--n must be an increasing list of sizes >= 6"));
            }
            let opts = ConvergenceOptions {
                dt_mode: a.dt_mode(DtMode::Convergence)?,
                integrator: a.integrator()?.unwrap_or(Integrator::Rk4),
                cfl: a.cfl,
                t_end: a.t_end,
            };
            Ok(Plan::Convergence { problem, scheme: a.scheme()?, ns, opts, out: a.out_dir() })
        }
        Command::Solve1d(a) => solve_plan(with_config(a)?, Dim::One),
        Command::Solve2d(a) => solve_plan(with_config(a)?, Dim::Two),
        Command::Compare(a) => {
            let a = with_config(a)?;
            let problem = a.problem()?;
            let spec = make_problem(&problem)?;
            if spec.dim != Dim::One {
                return Err(usage(format!("{problem} is two-dimensional; compare is 1D only")));
            }
            let n = a.single_n()?.unwrap_or(spec.default_n[0]);
            if n < 6 {
                return Err(usage("--n must be at least 6"));
            }
            if let Some(r) = a.reference_n {
                if r < 10 * n {
                    return Err(usage(format!("--reference-n must be at least 10x --n ({})", 10 * n)));
                }
            }
            Ok(Plan::Compare {
                problem,
                schemes: a.schemes()?,
                n,
                opts: CompareOptionsPlan { cfl: a.cfl, t_end: a.t_end, reference_n: a.reference_n },
                out: a.out_dir(),
                emit_plots: a.emit_plots,
            })
        }
    }
}

fn solve_plan(a: CommonArgs, dim: Dim) -> Result<Plan, Error> {
    let problem = a.problem()?;
    let spec = make_problem(&problem)?;
    if spec.dim != dim {
        let cmd = if spec.dim == Dim::One { "solve1d" } else { "solve2d" };
        return Err(usage(format!("{problem} has the wrong dimensionality; use {cmd}")));
    }
    let n = a.single_n()?;
    let grid = match dim {
        Dim::One => {
            if a.nx.is_some() || a.ny.is_some() {
                return Err(usage("--nx/--ny apply to solve2d only"));
            }
            n.map(|n| [n, 1])
        }
        Dim::Two => match (a.nx.or(n), a.ny.or(n)) {
            (Some(nx), Some(ny)) => Some([nx, ny]),
            (None, None) => None,
            (Some(nx), None) => Some([nx, spec.default_n[1] * nx / spec.default_n[0]]),
            (None, Some(ny)) => Some([spec.default_n[0] * ny / spec.default_n[1], ny]),
        },
    };
    if let Some(g) = grid {
        if g[0] < 6 || (dim == Dim::Two && g[1] < 6) {
            return Err(usage("grids need at least 6 cells per direction"));
        }
    }
    let config = RunConfig {
        n: grid,
        cfl: a.cfl,
        dt_mode: a.dt_mode(DtMode::Cfl)?,
        integrator: a.integrator()?,
        t_end: a.t_end,
        positivity_limiter: a.positivity_limiter,
        ..RunConfig::new(&problem, a.scheme()?)
    };
    Ok(Plan::Solve { config, dim, out: a.out_dir(), emit_plots: a.emit_plots, levels: a.levels.unwrap_or(30) })
}

/// Parses `argv` into a validated plan.
pub fn parse_cli<I, T>(argv: I) -> Result<Plan, Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| usage(e.to_string()))?;
    plan(cli)
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_numerical() {
        EXIT_NUMERICAL
    } else if e.is_io() {
        EXIT_IO
    } else {
        EXIT_USAGE
    }
}

/// Executes a plan, printing a summary to stdout.
pub fn execute(plan: &Plan) -> Result<(), Error> {
    match plan {
        Plan::ListProblems { json } => {
            for name in PROBLEM_NAMES {
                let spec = make_problem(name)?;
                if *json {
                    println!("{}", serde_json::to_string(&spec).expect("specs serialize"));
                } else {
                    let [nx, ny] = spec.default_n;
                    let grid = if spec.dim == Dim::One { format!("{nx}") } else { format!("{nx}x{ny}") };
                    println!("{name:<26} t_end={:<5} N={grid:<9} solution={:?}", spec.t_end, spec.policy);
                }
            }
            Ok(())
        }
        Plan::Convergence { problem, scheme, ns, opts, out } => {
            let rows = convergence_table(problem, scheme, ns, opts)?;
            let path = out.join(format!("convergence_{problem}_{}.csv", scheme.variant.tag()));
            write_table_csv(&path, &rows)?;
            print!("{}", format_table_csv(&rows));
            eprintln!("wrote {}", path.display());
            Ok(())
        }
        Plan::Solve { config, dim, out, emit_plots, levels } => {
            let result = run_simulation(config)?;
            let [nx, ny] = result.config.n.unwrap_or(result.spec.default_n);
            let stem = match dim {
                Dim::One => format!("{}_{}_n{nx}", config.problem, config.scheme.variant.tag()),
                Dim::Two => format!("{}_{}_{nx}x{ny}", config.problem, config.scheme.variant.tag()),
            };
            let csv = format!("{stem}.csv");
            write_field_csv(&out.join(&csv), &result.solution)?;
            if *emit_plots {
                let title = format!("{} {} t={}", config.problem, config.scheme.variant.label(), result.t);
                let (script, kind) = match dim {
                    Dim::One => (format!("{stem}.gp"), PlotKind::Overlay { csv: csv.clone(), title }),
                    Dim::Two => (format!("{stem}.py"), PlotKind::Contour { csv: csv.clone(), title, levels: *levels }),
                };
                emit_plot_script(&out.join(script), &kind)?;
            }
            println!("{} steps to t={} -> {}", result.steps, result.t, out.join(csv).display());
            Ok(())
        }
        Plan::Compare { problem, schemes, n, opts, out, emit_plots } => {
            let copts =
                CompareOptions { cfl: opts.cfl, t_end: opts.t_end, reference_n: opts.reference_n, cache_dir: None };
            let cmp = compare_schemes(problem, schemes, *n, &copts)?;
            let table = out.join(format!("compare_{problem}_n{n}.csv"));
            write_compare_csv(&table, &cmp.rows)?;
            let profiles = format!("profiles_{problem}_n{n}.csv");
            let mut names = vec!["x", "reference"];
            names.extend(cmp.profiles.iter().map(|(v, _)| v.label()));
            let mut cols: Vec<&[f64]> = vec![&cmp.x, &cmp.reference];
            cols.extend(cmp.profiles.iter().map(|(_, p)| p.as_slice()));
            write_columns_csv(&out.join(&profiles), &names, &cols)?;
            if *emit_plots {
                let kind =
                    PlotKind::Overlay { csv: profiles.clone(), title: format!("{problem}: {} at N={n}", cmp.quantity) };
                emit_plot_script(&out.join(format!("profiles_{problem}_n{n}.gp")), &kind)?;
            }
            print!("{}", format_compare_csv(&cmp.rows));
            if cmp.rows.iter().any(|r| r.error.is_some()) {
                eprintln!("some schemes failed; see the status column");
            }
            Ok(())
        }
    }
}

/// Entry point of the binary; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = plan(cli).and_then(|p| execute(&p));
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_one_command() {
        let plan = parse_cli([
            "weno-lab",
            "convergence",
            "--problem",
            "advection_sin",
            "--scheme",
            "mp",
            "--n",
            "10,20,40,80,160,320",
        ])
        .unwrap();
        let Plan::Convergence { scheme, ns, opts, .. } = plan else { panic!() };
        assert_eq!(scheme, SchemeParams::new(Variant::Mp));
        assert_eq!(ns, vec![10, 20, 40, 80, 160, 320]);
        assert_eq!(opts.dt_mode, DtMode::Convergence);
        assert_eq!(opts.integrator, Integrator::Rk4);
    }

    #[test]
    fn usage_errors() {
        for argv in [
            vec!["weno-lab", "convergence", "--scheme", "mp"],
            vec!["weno-lab", "solve1d", "--problem", "nope"],
            vec!["weno-lab", "solve1d", "--problem", "lax", "--scheme", "q"],
            vec!["weno-lab", "solve1d", "--problem", "lax", "--zp", "3"],
            vec!["weno-lab", "solve1d", "--problem", "lax", "--cfl", "2"],
            vec!["weno-lab", "solve1d", "--problem", "lax", "--bogus"],
            vec!["weno-lab", "solve2d", "--problem", "lax"],
            vec!["weno-lab", "convergence", "--problem", "advection_sin", "--n", "20,10"],
        ] {
            let err = parse_cli(argv.clone()).unwrap_err();
            assert_eq!(exit_code(&err), EXIT_USAGE, "{argv:?}: {err}");
        }
    }

    #[test]
    fn z_with_p_one() {
        let Plan::Solve { config, .. } =
            parse_cli(["weno-lab", "solve1d", "--problem", "lax", "--scheme", "z", "--zp", "1"]).unwrap()
        else {
            panic!()
        };
        assert_eq!(config.scheme.variant, Variant::Z);
        assert_eq!(config.scheme.zp, 1);
    }

    #[test]
    fn config_file_is_overridden_by_flags() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.cfg");
        fs::write(&path, "# sod run\nproblem = sod_modified\nscheme=js\nn=100\ncfl=0.4\n").unwrap();
        let Plan::Solve { config, .. } =
            parse_cli(["weno-lab", "solve1d", "--config", path.to_str().unwrap(), "--scheme", "mp"]).unwrap()
        else {
            panic!()
        };
        assert_eq!(config.problem, "sod_modified");
        assert_eq!(config.scheme.variant, Variant::Mp);
        assert_eq!(config.n, Some([100, 1]));
        assert_eq!(config.cfl, Some(0.4));

        fs::write(&path, "colour=blue\n").unwrap();
        assert!(parse_cli(["weno-lab", "solve1d", "--config", path.to_str().unwrap()]).is_err());
    }

    #[test]
    fn two_dimensional_grid_flags() {
        let Plan::Solve { config, .. } =
            parse_cli(["weno-lab", "solve2d", "--problem", "double_mach", "--ny", "100"]).unwrap()
        else {
            panic!()
        };
        assert_eq!(config.n, Some([400, 100]));
    }
}
