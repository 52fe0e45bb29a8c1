use super::boundary::{fill_ghosts_1d, BoundarySpec1D};
use super::line::interface_fluxes_into;
use super::time::timestep_1d;
use super::{Field1D, Grid1D, Solver, GHOST};
use crate::euler::{
    char_interface_flux, cons_to_prim_1d, flux_1d, lf_split_char, max_wave_speed_1d, roe_basis,
    steger_warming_split_1d, ConsState1D, GasModel, STEGER_WARMING_DELTA,
};
use crate::kernel::SchemeConfig;
use crate::{Error, Result};

/// Attaches the interior index to a non-physical state error.
pub(crate) fn at_index(e: Error, i: usize, j: usize) -> Error {
    match e {
        Error::NonphysicalState(mut s) => {
            s.index.get_or_insert((i, j));
            Error::NonphysicalState(s)
        }
        other => other,
    }
}

/// Line index (ghosts included) to interior index, clamped for reporting.
fn interior_index(k: usize, n: usize) -> usize {
    k.saturating_sub(GHOST).min(n - 1)
}

/// Flux differences `-(F[i+1/2] - F[i-1/2]) / dx` written into the interior
/// of `out` from `n + 1` face fluxes.
fn difference<const N: usize>(faces: &[[f64; N]], dx: f64, out: &mut Field1D<N>) {
    for (i, u) in out.interior_mut().iter_mut().enumerate() {
        for m in 0..N {
            u[m] = -(faces[i + 1][m] - faces[i][m]) / dx;
        }
    }
}

/// `u_t + a u_x = 0` with the Lax–Friedrichs split `(a u +- |a| u) / 2`.
#[derive(Clone, Debug)]
pub struct ScalarAdvection1D {
    pub grid: Grid1D,
    pub bc: BoundarySpec1D,
    pub speed: f64,
    pub scheme: SchemeConfig,
}

impl ScalarAdvection1D {
    fn face_fluxes(&self, field: &Field1D<1>) -> Vec<[f64; 1]> {
        let a = self.speed;
        let line = field.line();
        let plus: Vec<f64> = line.iter().map(|u| 0.5 * (a + a.abs()) * u[0]).collect();
        let minus: Vec<f64> = line.iter().map(|u| 0.5 * (a - a.abs()) * u[0]).collect();
        let mut faces = vec![0.0; field.n() + 1];
        interface_fluxes_into(&plus, &minus, &self.scheme, &mut faces);
        faces.into_iter().map(|f| [f]).collect()
    }
}

impl Solver for ScalarAdvection1D {
    type Field = Field1D<1>;

    fn fill_ghosts(&self, field: &mut Field1D<1>, t: f64) {
        fill_ghosts_1d(field, &self.bc, t);
    }

    fn rhs(&self, field: &Field1D<1>, _t: f64) -> Result<Field1D<1>> {
        let faces = self.face_fluxes(field);
        let mut out = Field1D::zeros(field.grid);
        difference(&faces, field.grid.dx, &mut out);
        Ok(out)
    }

    fn timestep(&self, field: &Field1D<1>, cfl: f64) -> Result<f64> {
        Ok(cfl * field.grid.dx / self.speed.abs())
    }

    fn check(&self, field: &Field1D<1>) -> Result<(f64, f64)> {
        let mut lo = f64::INFINITY;
        for (i, u) in field.interior().iter().enumerate() {
            if !u[0].is_finite() {
                return Err(at_index(Error::nonphysical(u[0], u[0]), i, 0));
            }
            lo = lo.min(u[0]);
        }
        Ok((lo, lo))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Splitting1D {
    /// Global Lax–Friedrichs splitting in the Roe-averaged characteristic
    /// fields of each face.
    CharacteristicLf,
    /// Componentwise Steger–Warming splitting with eigenvalue smoothing.
    StegerWarming { delta: f64 },
}

impl Splitting1D {
    pub fn steger_warming() -> Self {
        Splitting1D::StegerWarming { delta: STEGER_WARMING_DELTA }
    }
}

/// One-dimensional Euler equations.
#[derive(Clone, Debug)]
pub struct Euler1D {
    pub grid: Grid1D,
    pub bc: BoundarySpec1D,
    pub gas: GasModel,
    pub scheme: SchemeConfig,
    pub splitting: Splitting1D,
}

impl Euler1D {
    pub fn new(grid: Grid1D, bc: BoundarySpec1D, gas: GasModel, scheme: SchemeConfig) -> Self {
        Self { grid, bc, gas, scheme, splitting: Splitting1D::CharacteristicLf }
    }

    pub fn with_splitting(mut self, splitting: Splitting1D) -> Self {
        self.splitting = splitting;
        self
    }

    /// The `n + 1` face fluxes of a field whose ghosts are filled.
    pub fn face_fluxes(&self, field: &Field1D<3>) -> Result<Vec<[f64; 3]>> {
        let line = field.line();
        let n = field.n();
        let fluxes = line
            .iter()
            .enumerate()
            .map(|(k, u)| flux_1d(*u, &self.gas).map_err(|e| at_index(e, interior_index(k, n), 0)))
            .collect::<Result<Vec<_>>>()?;
        let mut faces = vec![[0.0; 3]; n + 1];
        match self.splitting {
            Splitting1D::CharacteristicLf => {
                let mut alpha: f64 = 0.0;
                for (k, u) in line.iter().enumerate() {
                    let s = max_wave_speed_1d(*u, &self.gas).map_err(|e| at_index(e, interior_index(k, n), 0))?;
                    alpha = alpha.max(s);
                }
                for (k, face) in faces.iter_mut().enumerate() {
                    let g = k + GHOST - 1;
                    let basis = roe_basis(
                        &ConsState1D::from_array(line[g]),
                        &ConsState1D::from_array(line[g + 1]),
                        &self.gas,
                    )
                    .map_err(|e| at_index(e, interior_index(g, n), 0))?;
                    let states: [[f64; 3]; 6] = line[g - 2..g + 4].try_into().unwrap();
                    let f: [[f64; 3]; 6] = fluxes[g - 2..g + 4].try_into().unwrap();
                    let split = lf_split_char(&states, &f, &basis, alpha);
                    *face = char_interface_flux(&split, &basis, &self.scheme);
                }
            }
            Splitting1D::StegerWarming { delta } => {
                let mut plus = vec![vec![0.0; line.len()]; 3];
                let mut minus = vec![vec![0.0; line.len()]; 3];
                for (k, u) in line.iter().enumerate() {
                    let (p, m) = steger_warming_split_1d(*u, &self.gas, delta)
                        .map_err(|e| at_index(e, interior_index(k, n), 0))?;
                    for c in 0..3 {
                        plus[c][k] = p[c];
                        minus[c][k] = m[c];
                    }
                }
                let mut buf = vec![0.0; n + 1];
                for c in 0..3 {
                    interface_fluxes_into(&plus[c], &minus[c], &self.scheme, &mut buf);
                    for (face, v) in faces.iter_mut().zip(&buf) {
                        face[c] = *v;
                    }
                }
            }
        }
        Ok(faces)
    }
}

impl Solver for Euler1D {
    type Field = Field1D<3>;

    fn fill_ghosts(&self, field: &mut Field1D<3>, t: f64) {
        fill_ghosts_1d(field, &self.bc, t);
    }

    fn rhs(&self, field: &Field1D<3>, _t: f64) -> Result<Field1D<3>> {
        let faces = self.face_fluxes(field)?;
        let mut out = Field1D::zeros(field.grid);
        difference(&faces, field.grid.dx, &mut out);
        Ok(out)
    }

    fn timestep(&self, field: &Field1D<3>, cfl: f64) -> Result<f64> {
        timestep_1d(field, &self.gas, cfl)
    }

    fn check(&self, field: &Field1D<3>) -> Result<(f64, f64)> {
        let mut lo = (f64::INFINITY, f64::INFINITY);
        for (i, u) in field.interior().iter().enumerate() {
            let w = cons_to_prim_1d(*u, &self.gas).map_err(|e| at_index(e, i, 0))?;
            lo = (lo.0.min(w.rho), lo.1.min(w.p));
        }
        Ok(lo)
    }
}
