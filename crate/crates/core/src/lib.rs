//! Fifth-order finite-difference WENO schemes for hyperbolic conservation
//! laws.
//!
//! Six weight constructions share one reconstruction pipeline: the classical
//! Jiang–Shu weights ([`Variant::Js`]), the mapped weights ([`Variant::M`]),
//! WENO-Z ([`Variant::Z`]), the `L1`-norm indicators of WENO-NS
//! ([`Variant::Ns`]) and WENO-P ([`Variant::P`]), and MWENO-P
//! ([`Variant::Mp`]), whose global indicator is the squared fourth undivided
//! difference of the stencil. The crate also carries the benchmark problems
//! these schemes are usually judged on: scalar advection and Burgers, 1D
//! shock tubes with an exact Riemann solver, and 2D Euler flows.
//!
//! ```
//! use weno_lab::kernels::{reconstruct_plus, SchemeParams, StencilWindow, Variant};
//!
//! // A linear profile is reconstructed exactly by every variant.
//! let win = StencilWindow::unit([1.0, 2.0, 3.0, 4.0, 5.0]);
//! for v in Variant::ALL {
//!     let h = reconstruct_plus(&win, &SchemeParams::new(v));
//!     assert!((h - 3.5).abs() < 1e-12);
//! }
//! ```

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod euler;
pub mod grid;
pub mod harness;
pub mod io;
pub mod kernels;
pub mod problems;
pub mod scalar;
pub mod time;

pub use error::{Error, Result};
pub use kernels::{SchemeParams, Variant};
