//! Conservative finite-difference solvers on uniform structured grids.
//!
//! Points sit at the centres of `n` equal sub-intervals of the domain and
//! every line carries [`GHOST`] ghost points on each side, which is what the
//! five-point reconstruction of both split flux parts needs.

mod boundary;
mod field;
mod line;
mod one_d;
mod time;
mod two_d;

pub use boundary::{
    fill_ghosts_1d, fill_ghosts_2d, BoundaryCondition, BoundarySpec1D, BoundarySpec2D, Segment,
    ShockMotion, StepObstacle,
};
pub use field::{Field1D, Field2D, FieldData};
pub use line::interface_fluxes;
pub use one_d::{Euler1D, ScalarAdvection1D, Splitting1D};
pub use time::{
    advance_to, advance_to_with, rk3_step, timestep_1d, timestep_2d, RunDiagnostics, StepControl,
};
pub use two_d::{Euler2D, SourceTerm};

use crate::{Error, Result};

/// Ghost layers per side.
pub const GHOST: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Grid1D {
    pub x0: f64,
    pub x1: f64,
    pub n: usize,
    pub dx: f64,
}

impl Grid1D {
    pub fn new(x0: f64, x1: f64, n: usize) -> Result<Self> {
        if n < 10 {
            return Err(Error::InvalidConfig(format!("grid needs at least 10 points, got {n}")));
        }
        if !(x1 > x0) {
            return Err(Error::InvalidConfig(format!("empty domain [{x0}, {x1}]")));
        }
        Ok(Self { x0, x1, n, dx: (x1 - x0) / n as f64 })
    }

    /// Coordinate of interior point `i`.
    #[inline]
    pub fn x(&self, i: usize) -> f64 {
        self.x0 + (i as f64 + 0.5) * self.dx
    }

    pub fn coordinates(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.x(i)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Grid2D {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
    pub nx: usize,
    pub ny: usize,
    pub dx: f64,
    pub dy: f64,
}

impl Grid2D {
    pub fn new(bounds: [f64; 4], nx: usize, ny: usize) -> Result<Self> {
        let [x0, x1, y0, y1] = bounds;
        if nx < 10 || ny < 10 {
            return Err(Error::InvalidConfig(format!("grid needs at least 10x10 points, got {nx}x{ny}")));
        }
        if !(x1 > x0 && y1 > y0) {
            return Err(Error::InvalidConfig("empty domain".into()));
        }
        Ok(Self {
            x0,
            x1,
            y0,
            y1,
            nx,
            ny,
            dx: (x1 - x0) / nx as f64,
            dy: (y1 - y0) / ny as f64,
        })
    }

    #[inline]
    pub fn x(&self, i: usize) -> f64 {
        self.x0 + (i as f64 + 0.5) * self.dx
    }

    #[inline]
    pub fn y(&self, j: usize) -> f64 {
        self.y0 + (j as f64 + 0.5) * self.dy
    }
}

/// A semi-discrete system that can be advanced in time.
pub trait Solver {
    type Field: FieldData;

    /// Populates all ghost layers for time `t`.
    fn fill_ghosts(&self, field: &mut Self::Field, t: f64);

    /// `dU/dt` at every interior point; ghosts of the result are zero.
    /// Expects ghosts to be filled.
    fn rhs(&self, field: &Self::Field, t: f64) -> Result<Self::Field>;

    /// CFL-limited step.
    fn timestep(&self, field: &Self::Field, cfl: f64) -> Result<f64>;

    /// Validates the interior and returns `(min density, min pressure)`;
    /// scalar systems report their minimum value twice.
    fn check(&self, field: &Self::Field) -> Result<(f64, f64)>;
}
