//! Fifth-order finite-difference WENO schemes for hyperbolic conservation
//! laws: the WENO-ZN weighting together with the JS, Z, ZA, D and A
//! baselines, scalar and Euler solvers on structured grids, a catalogue of
//! benchmark problems and the machinery to verify them.

pub mod error;
pub mod euler;
pub mod harness;
pub mod io;
pub mod kernel;
pub mod problems;
pub mod solver;

pub use error::{Error, NonphysicalState, Result};
pub use kernel::{SchemeConfig, SchemeKind, StencilWindow};
