//! The exact Riemann solver against jump conditions, isentropic relations and
//! continuity of the self-similar profile.

use weno_lab::euler::{GasModel, Primitive1D};
use weno_lab::problems::{make_problem, InitialCondition, RiemannSolution};

const AIR: GasModel = GasModel::AIR;

fn riemann_data(name: &str) -> (Primitive1D, Primitive1D) {
    match make_problem(name).unwrap().ic {
        InitialCondition::Riemann1D { left, right, .. } => (left, right),
        other => panic!("{name} is not a Riemann problem: {other:?}"),
    }
}

/// Relative residuals of the relations connecting `outer` to the star state
/// on one side. `sign` is -1 for the left wave and +1 for the right one.
fn wave_residuals(outer: &Primitive1D, rho_star: f64, s: &RiemannSolution, sign: f64) -> Vec<f64> {
    let g = AIR.gamma;
    let (p, u) = (s.p_star, s.u_star);
    if p > outer.p {
        let speed = (rho_star * u - outer.rho * outer.u) / (rho_star - outer.rho);
        let (mo, ms) = (outer.rho * (outer.u - speed), rho_star * (u - speed));
        let e = |rho: f64, u: f64, p: f64| p / ((g - 1.0) * rho) + 0.5 * (u - speed).powi(2) + p / rho;
        vec![
            (mo - ms).abs() / mo.abs(),
            (mo * (outer.u - speed) + outer.p - ms * (u - speed) - p).abs() / (outer.p + p),
            (e(outer.rho, outer.u, outer.p) - e(rho_star, u, p)).abs() / e(outer.rho, outer.u, outer.p),
        ]
    } else {
        let (ao, a) = (AIR.sound_speed(outer.rho, outer.p), AIR.sound_speed(rho_star, p));
        vec![
            (outer.p / outer.rho.powf(g) - p / rho_star.powf(g)).abs() / (outer.p / outer.rho.powf(g)),
            ((outer.u - sign * 2.0 * ao / (g - 1.0)) - (u - sign * 2.0 * a / (g - 1.0))).abs() / (ao + a),
        ]
    }
}

#[test]
fn star_states_satisfy_jump_and_isentropic_relations() {
    for name in ["sod_modified", "lax"] {
        let (l, r) = riemann_data(name);
        let s = RiemannSolution::solve(&l, &r, &AIR).unwrap();
        let (rl, rr) = s.star_densities();
        for res in wave_residuals(&l, rl, &s, -1.0).into_iter().chain(wave_residuals(&r, rr, &s, 1.0)) {
            assert!(res < 1e-10, "{name}: residual {res}");
        }
    }
}

#[test]
fn profile_is_continuous_through_the_sonic_rarefaction() {
    // The modified Sod data has a left rarefaction straddling xi = 0.
    let (l, r) = riemann_data("sod_modified");
    let s = RiemannSolution::solve(&l, &r, &AIR).unwrap();
    let head = l.u - AIR.sound_speed(l.rho, l.p);
    let (rl, _) = s.star_densities();
    let tail = s.u_star - AIR.sound_speed(rl, s.p_star);
    assert!(head < 0.0 && tail > 0.0, "head {head}, tail {tail}");

    let step = 1e-6;
    let n = ((tail - head) / step) as usize + 200;
    let mut prev = s.sample(head - 100.0 * step);
    let mut worst = 0.0f64;
    for k in 1..=n {
        let w = s.sample(head - 100.0 * step + k as f64 * step);
        worst = worst.max((w.rho - prev.rho).abs()).max((w.u - prev.u).abs()).max((w.p - prev.p).abs());
        prev = w;
    }
    // Lipschitz bound: O(1) slopes times the step.
    assert!(worst < 10.0 * step, "largest jump {worst}");
    for edge in [head, 0.0, tail] {
        let (a, b) = (s.sample(edge - 1e-12), s.sample(edge + 1e-12));
        assert!((a.rho - b.rho).abs() < 1e-8 && (a.u - b.u).abs() < 1e-8 && (a.p - b.p).abs() < 1e-8, "{edge}");
    }
}
