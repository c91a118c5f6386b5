//! Pointwise fifth-order WENO reconstruction at a cell interface.
//!
//! Every function here works on a five-point window of point values of one
//! split-flux component, `w = (f[j-2], f[j-1], f[j], f[j+1], f[j+2])`, and
//! produces the value at `x[j+1/2]`. All formulas use undivided differences;
//! nothing is divided by the grid spacing.
//!
//! Six weight families are provided (see [`Variant`]). They share the three
//! quadratic candidates and differ only in how the nonlinear weights are
//! built.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Ideal (linear) weights of the three substencils.
pub const IDEAL_WEIGHTS: [f64; 3] = [0.1, 0.6, 0.3];

/// Five consecutive point values of one split-flux component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StencilWindow {
    pub w: [f64; 5],
    /// Grid spacing. Carried for diagnostics only.
    pub dx: f64,
}

impl StencilWindow {
    pub fn new(w: [f64; 5], dx: f64) -> Self {
        Self { w, dx }
    }

    /// Window without a meaningful spacing.
    pub fn unit(w: [f64; 5]) -> Self {
        Self { w, dx: 1.0 }
    }

    pub fn reversed(&self) -> Self {
        let [a, b, c, d, e] = self.w;
        Self { w: [e, d, c, b, a], dx: self.dx }
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self { w: self.w.map(|v| v * s), dx: self.dx }
    }

    pub fn is_finite(&self) -> bool {
        self.w.iter().all(|v| v.is_finite())
    }
}

/// The three candidate interface values `(f0, f1, f2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CandidateTriple {
    pub fhat: [f64; 3],
}

/// Local smoothness indicators `(b0, b1, b2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndicatorTriple {
    pub beta: [f64; 3],
}

/// First and second generalized undivided differences on each substencil.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UndividedDiffs {
    pub l1: [f64; 3],
    pub l2: [f64; 3],
}

/// Normalized nonlinear weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightTriple {
    pub omega: [f64; 3],
}

impl WeightTriple {
    /// Largest deviation from the ideal weights.
    pub fn max_deviation(&self) -> f64 {
        self.omega.iter().zip(IDEAL_WEIGHTS).map(|(w, d)| (w - d).abs()).fold(0.0, f64::max)
    }
}

/// Weight family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Classical Jiang–Shu weights.
    Js,
    /// Mapped weights (Henrick et al.).
    M,
    /// Global `tau5 = |b0 - b2|` weights (Borges et al.).
    Z,
    /// L1-norm indicators with the `zeta` global indicator (Ha et al.).
    Ns,
    /// Balanced indicators with `zeta = (b0 - b2)^2` (Kim et al.).
    P,
    /// Balanced indicators with the squared fourth-difference global indicator.
    Mp,
}

impl Variant {
    pub const ALL: [Variant; 6] = [Variant::Js, Variant::M, Variant::Z, Variant::Ns, Variant::P, Variant::Mp];

    /// Short lowercase tag used on the command line and in file names.
    pub fn tag(self) -> &'static str {
        match self {
            Variant::Js => "js",
            Variant::M => "m",
            Variant::Z => "z",
            Variant::Ns => "ns",
            Variant::P => "p",
            Variant::Mp => "mp",
        }
    }

    /// Display name as used in the literature.
    pub fn label(self) -> &'static str {
        match self {
            Variant::Js => "WENO-JS",
            Variant::M => "WENO-M",
            Variant::Z => "WENO-Z",
            Variant::Ns => "WENO-NS",
            Variant::P => "WENO-P",
            Variant::Mp => "MWENO-P",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        Variant::ALL
            .into_iter()
            .find(|v| v.tag() == lower || v.label().eq_ignore_ascii_case(&lower))
            .ok_or_else(|| Error::Config(format!("unknown scheme `{s}` (expected js|m|z|ns|p|mp)")))
    }
}

/// Everything that selects one WENO flavor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchemeParams {
    pub variant: Variant,
    pub eps: f64,
    /// Weight of the first-difference term in the L1 indicators (NS, P, MP).
    pub xi: f64,
    /// Substencil balancing parameter (P, MP).
    pub delta: f64,
    /// Power of the WENO-Z ratio.
    pub zp: u8,
}

impl SchemeParams {
    /// Defaults: `eps = 1e-6` for JS and M, `1e-40` otherwise; `xi = 0.1`,
    /// `delta = 0.05`, `zp = 2`.
    pub fn new(variant: Variant) -> Self {
        let eps = match variant {
            Variant::Js | Variant::M => 1e-6,
            Variant::Z | Variant::Ns | Variant::P | Variant::Mp => 1e-40,
        };
        Self { variant, eps, xi: 0.1, delta: 0.05, zp: 2 }
    }

    pub fn validate(&self) -> Result<(), Error> {
        if !(self.eps > 0.0 && self.eps.is_finite()) {
            return Err(Error::Config(format!("eps must be positive, got {}", self.eps)));
        }
        if !(self.xi >= 0.0 && self.xi.is_finite()) {
            return Err(Error::Config(format!("xi must be nonnegative, got {}", self.xi)));
        }
        if !(self.delta > -1.0 && self.delta < 1.0) {
            return Err(Error::Config(format!("delta must lie in (-1, 1), got {}", self.delta)));
        }
        if !(self.zp == 1 || self.zp == 2) {
            return Err(Error::Config(format!("zp must be 1 or 2, got {}", self.zp)));
        }
        Ok(())
    }
}

impl Default for SchemeParams {
    fn default() -> Self {
        Self::new(Variant::Mp)
    }
}

/// Third-order candidate values at `x[j+1/2]` on the three substencils.
#[inline]
pub fn candidate_fluxes(win: &StencilWindow) -> CandidateTriple {
    let [a, b, c, d, e] = win.w;
    CandidateTriple {
        fhat: [(2.0 * a - 7.0 * b + 11.0 * c) / 6.0, (-b + 5.0 * c + 2.0 * d) / 6.0, (2.0 * c + 5.0 * d - e) / 6.0],
    }
}

/// Consecutive differences of the window. Indicators are assembled from these
/// so that a constant window gives exactly zero.
#[inline]
fn first_diffs(win: &StencilWindow) -> [f64; 4] {
    let [a, b, c, d, e] = win.w;
    [b - a, c - b, d - c, e - d]
}

/// Jiang–Shu smoothness indicators.
#[inline]
pub fn beta_js(win: &StencilWindow) -> IndicatorTriple {
    const C1: f64 = 13.0 / 12.0;
    let [d0, d1, d2, d3] = first_diffs(win);
    let s0 = d1 - d0;
    let t0 = 3.0 * d1 - d0;
    let s1 = d2 - d1;
    let t1 = d1 + d2;
    let s2 = d3 - d2;
    let t2 = d3 - 3.0 * d2;
    IndicatorTriple {
        beta: [C1 * s0 * s0 + 0.25 * t0 * t0, C1 * s1 * s1 + 0.25 * t1 * t1, C1 * s2 * s2 + 0.25 * t2 * t2],
    }
}

/// Signed first and second undivided differences on each substencil.
///
/// `l1[k]` has coefficients `(1-k, 2k-3, 2-k)` over `(f[j-2+k], f[j-1+k], f[j+k])`,
/// so `l1[1] == l1[2] == f[j+1] - f[j]`. `l2[k]` is the usual second difference.
#[inline]
pub fn undivided_diffs(win: &StencilWindow) -> UndividedDiffs {
    let [d0, d1, d2, d3] = first_diffs(win);
    UndividedDiffs { l1: [2.0 * d1 - d0, d2, d2], l2: [d1 - d0, d2 - d1, d3 - d2] }
}

/// L1-type indicators `xi*|L1k| + |L2k|`.
#[inline]
pub fn beta_ns(win: &StencilWindow, xi: f64) -> IndicatorTriple {
    let l = undivided_diffs(win);
    IndicatorTriple { beta: [0, 1, 2].map(|k| xi * l.l1[k].abs() + l.l2[k].abs()) }
}

/// Rebalances the two right substencils: `(b0, (1+delta) b1, (1-delta) b2)`.
#[inline]
pub fn apply_delta(b: IndicatorTriple, delta: f64) -> IndicatorTriple {
    let [b0, b1, b2] = b.beta;
    IndicatorTriple { beta: [b0, (1.0 + delta) * b1, (1.0 - delta) * b2] }
}

#[inline]
pub fn tau5(b: IndicatorTriple) -> f64 {
    (b.beta[0] - b.beta[2]).abs()
}

/// `g(x) = x^3 / (1 + x^3)`. The pole at `x = -1` is reported as degenerate
/// input; large arguments saturate to 1 without overflowing.
pub fn ns_mapping(x: f64) -> Result<f64, Error> {
    let x3 = x * x * x;
    if 1.0 + x3 == 0.0 {
        return Err(Error::DegenerateInput(format!("g(x) = x^3/(1+x^3) has a pole at x = {x}")));
    }
    if x.abs() <= 1.0 {
        Ok(x3 / (1.0 + x3))
    } else {
        Ok(1.0 / (1.0 + 1.0 / x3))
    }
}

/// WENO-NS global indicator `(|b0 - b2|^2 + g(|L11|)^2) / 2`.
///
/// `g` is evaluated on `|L11|`, which keeps the result nonnegative and finite
/// for every input.
#[inline]
pub fn zeta_ns(b: IndicatorTriple, l11: f64) -> f64 {
    let g = ns_mapping(l11.abs()).expect("g has no pole on nonnegative arguments");
    let t = b.beta[0] - b.beta[2];
    0.5 * (t * t + g * g)
}

/// WENO-P global indicator `(b0 - b2)^2`.
#[inline]
pub fn zeta_p(b: IndicatorTriple) -> f64 {
    let t = b.beta[0] - b.beta[2];
    t * t
}

/// Squared fourth undivided difference, `|L20 + L22 - 2 L21|^2`.
#[inline]
pub fn eta_mp(win: &StencilWindow) -> f64 {
    let [d0, d1, d2, d3] = first_diffs(win);
    let q = (d3 - d2) - 2.0 * (d2 - d1) + (d1 - d0);
    q * q
}

/// Henrick mapping of a Jiang–Shu weight toward the ideal weight `d`.
#[inline]
pub fn map_weight(omega: f64, d: f64) -> f64 {
    omega * (d + d * d - 3.0 * d * omega + omega * omega) / (d * d + omega * (1.0 - 2.0 * d))
}

#[inline]
fn normalize(alpha: [f64; 3]) -> WeightTriple {
    let sum = alpha[0] + alpha[1] + alpha[2];
    WeightTriple { omega: alpha.map(|a| a / sum) }
}

#[inline]
fn js_weights(beta: [f64; 3], eps: f64) -> WeightTriple {
    normalize([0, 1, 2].map(|k| {
        let s = eps + beta[k];
        IDEAL_WEIGHTS[k] / (s * s)
    }))
}

/// `d_k (1 + num / (b_k + eps)^2)`, the common shape of the NS, P and MP weights.
#[inline]
fn global_indicator_weights(beta: [f64; 3], num: f64, eps: f64) -> WeightTriple {
    normalize([0, 1, 2].map(|k| {
        let s = beta[k] + eps;
        IDEAL_WEIGHTS[k] * (1.0 + num / (s * s))
    }))
}

/// Nonlinear weights of the selected variant.
pub fn nonlinear_weights(win: &StencilWindow, p: &SchemeParams) -> WeightTriple {
    match p.variant {
        Variant::Js => js_weights(beta_js(win).beta, p.eps),
        Variant::M => {
            let js = js_weights(beta_js(win).beta, p.eps);
            normalize([0, 1, 2].map(|k| map_weight(js.omega[k], IDEAL_WEIGHTS[k])))
        }
        Variant::Z => {
            let b = beta_js(win);
            let tau = tau5(b);
            normalize([0, 1, 2].map(|k| {
                let r = tau / (b.beta[k] + p.eps);
                let r = if p.zp == 1 { r } else { r.powi(i32::from(p.zp)) };
                IDEAL_WEIGHTS[k] * (1.0 + r)
            }))
        }
        Variant::Ns => {
            let l = undivided_diffs(win);
            let b = IndicatorTriple { beta: [0, 1, 2].map(|k| p.xi * l.l1[k].abs() + l.l2[k].abs()) };
            global_indicator_weights(b.beta, zeta_ns(b, l.l1[1]), p.eps)
        }
        Variant::P => {
            let b = beta_ns(win, p.xi);
            let bt = apply_delta(b, p.delta);
            global_indicator_weights(bt.beta, zeta_p(b), p.eps)
        }
        Variant::Mp => {
            let bt = apply_delta(beta_ns(win, p.xi), p.delta);
            global_indicator_weights(bt.beta, eta_mp(win), p.eps)
        }
    }
}

#[inline]
fn combine(c: CandidateTriple, w: WeightTriple) -> f64 {
    w.omega[0] * c.fhat[0] + w.omega[1] * c.fhat[1] + w.omega[2] * c.fhat[2]
}

/// Upwind-from-the-left value at `x[j+1/2]`.
#[inline]
pub fn reconstruct_plus(win: &StencilWindow, p: &SchemeParams) -> f64 {
    combine(candidate_fluxes(win), nonlinear_weights(win, p))
}

/// Upwind-from-the-right value at `x[j+1/2]`.
///
/// `win` holds `(f[j-1], f[j], f[j+1], f[j+2], f[j+3])` in ascending order;
/// the reconstruction is the mirror image of [`reconstruct_plus`].
#[inline]
pub fn reconstruct_minus(win: &StencilWindow, p: &SchemeParams) -> f64 {
    reconstruct_plus(&win.reversed(), p)
}

/// Reconstruction with the weights pinned to the ideal ones.
#[inline]
pub fn reconstruct_linear(win: &StencilWindow) -> f64 {
    combine(candidate_fluxes(win), WeightTriple { omega: IDEAL_WEIGHTS })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn win(w: [f64; 5]) -> StencilWindow {
        StencilWindow::unit(w)
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-14 * b.abs().max(1.0)
    }

    fn close3(a: [f64; 3], b: [f64; 3]) -> bool {
        a.iter().zip(b).all(|(x, y)| close(*x, y))
    }

    #[test]
    fn candidates() {
        assert_eq!(candidate_fluxes(&win([1.0; 5])).fhat, [1.0; 3]);
        assert!(close3(candidate_fluxes(&win([0.0, 1.0, 2.0, 3.0, 4.0])).fhat, [2.5; 3]));
        // x^2 sampled at -2..2: h(x) = x^2 - 1/12, h(1/2) = 1/6.
        assert!(close3(candidate_fluxes(&win([4.0, 1.0, 0.0, 1.0, 4.0])).fhat, [1.0 / 6.0; 3]));
    }

    #[test]
    fn js_indicators() {
        assert_eq!(beta_js(&win([3.5; 5])).beta, [0.0; 3]);
        assert!(close3(beta_js(&win([0.0, 1.0, 2.0, 3.0, 4.0])).beta, [1.0; 3]));
        assert!(close3(beta_js(&win([0.0, 0.0, 1.0, 0.0, 0.0])).beta, [10.0 / 3.0, 13.0 / 3.0, 10.0 / 3.0]));
    }

    #[test]
    fn undivided() {
        let l = undivided_diffs(&win([0.0, 1.0, 2.0, 3.0, 4.0]));
        assert_eq!((l.l1, l.l2), ([1.0; 3], [0.0; 3]));
        let l = undivided_diffs(&win([4.0, 1.0, 0.0, 1.0, 4.0]));
        assert_eq!((l.l1, l.l2), ([1.0; 3], [2.0; 3]));
        let l = undivided_diffs(&win([0.0, 0.0, 0.0, 1.0, 1.0]));
        assert_eq!((l.l1, l.l2), ([0.0, 1.0, 1.0], [0.0, 1.0, -1.0]));
    }

    #[test]
    fn ns_indicators() {
        assert_eq!(beta_ns(&win([2.0; 5]), 0.7).beta, [0.0; 3]);
        assert!(close3(beta_ns(&win([0.0, 1.0, 2.0, 3.0, 4.0]), 0.1).beta, [0.1; 3]));
        assert!(close3(beta_ns(&win([4.0, 1.0, 0.0, 1.0, 4.0]), 1.0).beta, [3.0; 3]));
    }

    #[test]
    fn delta_adjustment() {
        let one = IndicatorTriple { beta: [1.0; 3] };
        assert_eq!(apply_delta(one, 0.0).beta, [1.0; 3]);
        assert!(close3(apply_delta(one, 0.05).beta, [1.0, 1.05, 0.95]));
        assert!(close3(apply_delta(IndicatorTriple { beta: [0.0, 2.0, 4.0] }, 0.5).beta, [0.0, 3.0, 2.0]));
    }

    #[test]
    fn global_indicators() {
        assert_eq!(tau5(IndicatorTriple { beta: [1.0; 3] }), 0.0);
        assert!(close(tau5(beta_js(&win([0.0, 0.0, 0.0, 1.0, 1.0]))), 10.0 / 3.0));

        assert_eq!(zeta_ns(IndicatorTriple { beta: [1.0; 3] }, 0.0), 0.0);
        assert!(close(zeta_ns(IndicatorTriple { beta: [0.0, 1.0, 10.0 / 3.0] }, 0.0), 50.0 / 9.0));
        assert!(close(zeta_ns(IndicatorTriple { beta: [1.0; 3] }, 1.0), 0.125));
        // Negative L11 goes through |L11|.
        assert_eq!(zeta_ns(IndicatorTriple { beta: [1.0; 3] }, -1.0), zeta_ns(IndicatorTriple { beta: [1.0; 3] }, 1.0));

        assert_eq!(zeta_p(IndicatorTriple { beta: [1.0; 3] }), 0.0);
        assert_eq!(zeta_p(IndicatorTriple { beta: [0.0, 1.0, 2.0] }), 4.0);
        assert_eq!(zeta_p(IndicatorTriple { beta: [3.0, 0.0, 1.0] }), 4.0);

        assert_eq!(eta_mp(&win([-8.0, -1.0, 0.0, 1.0, 8.0])), 0.0);
        assert_eq!(eta_mp(&win([16.0, 1.0, 0.0, 1.0, 16.0])), 576.0);
        assert_eq!(eta_mp(&win([0.0, 0.0, 0.0, 1.0, 1.0])), 9.0);
    }

    #[test]
    fn ns_mapping_pole() {
        assert!(matches!(ns_mapping(-1.0), Err(Error::DegenerateInput(_))));
        assert_eq!(ns_mapping(1.0).unwrap(), 0.5);
        assert_eq!(ns_mapping(1e200).unwrap(), 1.0);
        assert_eq!(ns_mapping(0.0).unwrap(), 0.0);
    }

    #[test]
    fn mapping_fixed_points() {
        for d in IDEAL_WEIGHTS {
            assert_eq!(map_weight(0.0, d), 0.0);
            assert!(close(map_weight(1.0, d), 1.0));
            assert!(close(map_weight(d, d), d));
        }
    }

    #[test]
    fn constant_window_gives_ideal_weights() {
        for v in Variant::ALL {
            let p = SchemeParams::new(v);
            let w = nonlinear_weights(&win([0.7; 5]), &p);
            assert!(close3(w.omega, IDEAL_WEIGHTS), "{v}: {:?}", w.omega);
            assert!(close(reconstruct_plus(&win([0.7; 5]), &p), 0.7));
            assert!(close(reconstruct_minus(&win([0.7; 5]), &p), 0.7));
        }
    }

    #[test]
    fn step_suppresses_discontinuous_substencil() {
        let w = nonlinear_weights(&win([0.0, 0.0, 0.0, 1.0, 1.0]), &SchemeParams::new(Variant::Js));
        assert!(w.omega[2] < 1e-6);
        assert!(w.omega[0] + w.omega[1] > 1.0 - 1e-6);
    }

    #[test]
    fn minus_is_mirrored_plus() {
        let w = win([0.3, -1.2, 2.0, 0.5, 4.0]);
        for v in Variant::ALL {
            let p = SchemeParams::new(v);
            assert_eq!(reconstruct_minus(&w, &p), reconstruct_plus(&w.reversed(), &p));
        }
        let anti = win([-2.0, -1.0, 0.0, 1.0, 2.0]);
        let p = SchemeParams::new(Variant::Mp);
        assert!(close(reconstruct_minus(&anti, &p), reconstruct_plus(&anti.reversed(), &p)));
        assert!(close(reconstruct_minus(&anti, &p), -reconstruct_plus(&anti, &p)));
    }

    #[test]
    fn params_validation() {
        assert!(SchemeParams::new(Variant::Z).validate().is_ok());
        let mut p = SchemeParams::new(Variant::P);
        p.delta = 1.0;
        assert!(p.validate().is_err());
        p.delta = 0.05;
        p.eps = 0.0;
        assert!(p.validate().is_err());
        assert_eq!("MP".parse::<Variant>().unwrap(), Variant::Mp);
        assert_eq!("weno-js".parse::<Variant>().unwrap(), Variant::Js);
        assert!("q".parse::<Variant>().is_err());
    }
}
