//! Fine-grid WENO-JS references checked against the exact Riemann solution.

mod common;

use weno_lab::problems::{make_problem, reference_solution, InitialCondition, RiemannSolution};

#[test]
fn sod_reference_agrees_with_exact_solution() {
    let spec = make_problem("sod_modified").unwrap();
    let dir = tempfile::tempdir().unwrap();
    let r = reference_solution(&spec, 2000, Some(dir.path())).unwrap();
    let InitialCondition::Riemann1D { left, right, x0 } = spec.ic else { unreachable!() };
    let exact = RiemannSolution::solve(&left, &right, &spec.gas().unwrap()).unwrap();
    let rho: Vec<f64> = r.x.iter().map(|&x| exact.sample((x - x0) / spec.t_end).rho).collect();
    let err = common::l1(r.column("rho").unwrap(), &rho, r.x[1] - r.x[0]);
    assert!(err < 2e-3, "L1(rho) = {err}");

    // A second request is served from the cache and is bit-identical.
    let again = reference_solution(&spec, 2000, Some(dir.path())).unwrap();
    assert_eq!(again, r);
}
