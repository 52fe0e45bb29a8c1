use rayon::prelude::*;

use super::boundary::{fill_ghosts_2d, reflect, BoundarySpec2D, StepObstacle};
use super::line::interface_fluxes_into;
use super::one_d::at_index;
use super::time::timestep_2d;
use super::{Field2D, Grid2D, Solver, GHOST};
use crate::euler::{cons_to_prim_2d, steger_warming_split, Axis, GasModel, STEGER_WARMING_DELTA};
use crate::kernel::{reconstruct, reconstruct_mirrored, SchemeConfig, StencilWindow};
use crate::Result;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum SourceTerm {
    #[default]
    None,
    /// Adds `(0, 0, rho, rho v)`: unit gravity acting in `+y`.
    RayleighTaylorGravity,
}

/// Two-dimensional Euler equations with Steger–Warming splitting swept
/// dimension by dimension.  The split fluxes are reconstructed
/// componentwise unless `characteristic` is set.
#[derive(Clone, Debug)]
pub struct Euler2D {
    pub grid: Grid2D,
    pub bc: BoundarySpec2D,
    pub gas: GasModel,
    pub scheme: SchemeConfig,
    pub source: SourceTerm,
    pub obstacle: Option<StepObstacle>,
    /// Steger–Warming eigenvalue smoothing.
    pub delta: f64,
    /// Reconstruct in the Roe characteristic fields of each face.
    pub characteristic: bool,
}

impl Euler2D {
    pub fn new(grid: Grid2D, bc: BoundarySpec2D, gas: GasModel, scheme: SchemeConfig) -> Self {
        Self { grid, bc, gas, scheme, source: SourceTerm::None, obstacle: None, delta: STEGER_WARMING_DELTA, characteristic: false }
    }

    pub fn with_source(mut self, source: SourceTerm) -> Self {
        self.source = source;
        self
    }

    pub fn with_obstacle(mut self, obstacle: Option<StepObstacle>) -> Self {
        self.obstacle = obstacle;
        self
    }

    pub fn with_characteristic(mut self, characteristic: bool) -> Self {
        self.characteristic = characteristic;
        self
    }

    fn extent(&self) -> (usize, usize) {
        self.obstacle.map_or((self.grid.nx, 0), |s| s.extent(&self.grid))
    }

    /// Whether interior point `(i, j)` is inside the obstacle.
    pub fn is_solid(&self, i: usize, j: usize) -> bool {
        let (i0, j0) = self.extent();
        i >= i0 && j < j0
    }

    /// Flux differences `F[k+1/2] - F[k-1/2]` of one line of `m` points
    /// given as `m + 6` states.  `offset` is the interior index of the first
    /// point and `fixed` the other coordinate, both used only for reporting.
    fn sweep(&self, states: &[[f64; 4]], axis: Axis, at: impl Fn(usize) -> (usize, usize)) -> Result<Vec<[f64; 4]>> {
        let len = states.len();
        let m = len - 2 * GHOST;
        let mut plus = [vec![0.0; len], vec![0.0; len], vec![0.0; len], vec![0.0; len]];
        let mut minus = plus.clone();
        for (k, u) in states.iter().enumerate() {
            let (p, q) = steger_warming_split(*u, &self.gas, axis, self.delta).map_err(|e| {
                let (i, j) = at(k.saturating_sub(GHOST).min(m - 1));
                at_index(e, i, j)
            })?;
            for c in 0..4 {
                plus[c][k] = p[c];
                minus[c][k] = q[c];
            }
        }
        let mut out = vec![[0.0; 4]; m];
        if self.characteristic {
            let mut prev = [0.0; 4];
            for k in 0..=m {
                let g = k + GHOST - 1;
                let basis = roe_basis_2d(&states[g], &states[g + 1], &self.gas, axis).map_err(|e| {
                    let (i, j) = at(k.min(m - 1));
                    at_index(e, i, j)
                })?;
                let mut w = [0.0; 4];
                for (f, wf) in w.iter_mut().enumerate() {
                    let mut wp = [0.0; 5];
                    let mut wm = [0.0; 5];
                    for s in 0..5 {
                        let (a, b) = (g + s - 2, g + s - 1);
                        wp[s] = (0..4).map(|c| basis.left[f][c] * plus[c][a]).sum();
                        wm[s] = (0..4).map(|c| basis.left[f][c] * minus[c][b]).sum();
                    }
                    *wf = reconstruct(&StencilWindow(wp), &self.scheme) + reconstruct_mirrored(&StencilWindow(wm), &self.scheme);
                }
                let mut face = [0.0; 4];
                for (c, fc) in face.iter_mut().enumerate() {
                    *fc = (0..4).map(|f| basis.right[c][f] * w[f]).sum();
                }
                if k > 0 {
                    for c in 0..4 {
                        out[k - 1][c] = face[c] - prev[c];
                    }
                }
                prev = face;
            }
            return Ok(out);
        }
        let mut faces = vec![0.0; m + 1];
        for c in 0..4 {
            interface_fluxes_into(&plus[c], &minus[c], &self.scheme, &mut faces);
            for (k, o) in out.iter_mut().enumerate() {
                o[c] = faces[k + 1] - faces[k];
            }
        }
        Ok(out)
    }

    /// Row differences indexed `[j][i]` for the fluid part of each row.
    fn x_differences(&self, field: &Field2D<4>) -> Result<Vec<Vec<[f64; 4]>>> {
        let (nx, ny) = (self.grid.nx, self.grid.ny);
        let (i0, j0) = self.extent();
        (0..ny)
            .into_par_iter()
            .map(|j| {
                let jj = j as isize;
                let mut states: Vec<[f64; 4]> = (-(GHOST as isize)..(nx + GHOST) as isize).map(|i| *field.at(i, jj)).collect();
                if j < j0 {
                    // Mirror the fluid against the step face.
                    states.truncate(i0 + GHOST);
                    for k in 0..GHOST {
                        let mirrored = reflect(states[i0 + GHOST - 1 - k], Axis::X);
                        states.push(mirrored);
                    }
                }
                self.sweep(&states, Axis::X, |i| (i, j))
            })
            .collect()
    }

    /// Column differences indexed `[i][j - first fluid row]`.
    fn y_differences(&self, field: &Field2D<4>) -> Result<Vec<Vec<[f64; 4]>>> {
        let (nx, ny) = (self.grid.nx, self.grid.ny);
        let (i0, j0) = self.extent();
        (0..nx)
            .into_par_iter()
            .map(|i| {
                let ii = i as isize;
                let first = if i >= i0 { j0 } else { 0 };
                let mut states: Vec<[f64; 4]> = Vec::with_capacity(ny - first + 2 * GHOST);
                if first > 0 {
                    for k in (0..GHOST).rev() {
                        states.push(reflect(*field.at(ii, (first + k) as isize), Axis::Y));
                    }
                    states.extend((first as isize..(ny + GHOST) as isize).map(|j| *field.at(ii, j)));
                } else {
                    states.extend((-(GHOST as isize)..(ny + GHOST) as isize).map(|j| *field.at(ii, j)));
                }
                self.sweep(&states, Axis::Y, |j| (i, j + first))
            })
            .collect()
    }
}

/// Eigenvectors of the flux Jacobian along `axis` at the Roe average of two
/// states, in conserved `(rho, rho u, rho v, E)` order.
struct CharBasis2D {
    left: [[f64; 4]; 4],
    right: [[f64; 4]; 4],
}

fn roe_basis_2d(a: &[f64; 4], b: &[f64; 4], gas: &GasModel, axis: Axis) -> Result<CharBasis2D> {
    let wa = cons_to_prim_2d(*a, gas)?;
    let wb = cons_to_prim_2d(*b, gas)?;
    let (sa, sb) = (wa.rho.sqrt(), wb.rho.sqrt());
    let avg = |x: f64, y: f64| (sa * x + sb * y) / (sa + sb);
    let u = avg(wa.u, wb.u);
    let v = avg(wa.v, wb.v);
    let h = avg((a[3] + wa.p) / wa.rho, (b[3] + wb.p) / wb.rho);
    let (un, ut) = match axis {
        Axis::X => (u, v),
        Axis::Y => (v, u),
    };
    let g1 = gas.gamma - 1.0;
    let q2 = un * un + ut * ut;
    let c2 = g1 * (h - 0.5 * q2);
    if !(c2 > 0.0) || !c2.is_finite() {
        return Err(crate::Error::nonphysical(f64::NAN, c2));
    }
    let c = c2.sqrt();
    let b1 = g1 / c2;
    let b2 = 0.5 * q2 * b1;
    // Rows and columns in (rho, normal, tangential, E) order.
    let right_nt = [
        [1.0, 1.0, 0.0, 1.0],
        [un - c, un, 0.0, un + c],
        [ut, ut, 1.0, ut],
        [h - un * c, 0.5 * q2, ut, h + un * c],
    ];
    let left_nt = [
        [0.5 * (b2 + un / c), -0.5 * (b1 * un + 1.0 / c), -0.5 * b1 * ut, 0.5 * b1],
        [1.0 - b2, b1 * un, b1 * ut, -b1],
        [-ut, 0.0, 1.0, 0.0],
        [0.5 * (b2 - un / c), -0.5 * (b1 * un - 1.0 / c), -0.5 * b1 * ut, 0.5 * b1],
    ];
    let perm: [usize; 4] = match axis {
        Axis::X => [0, 1, 2, 3],
        Axis::Y => [0, 2, 1, 3],
    };
    let mut left = [[0.0; 4]; 4];
    let mut right = [[0.0; 4]; 4];
    for f in 0..4 {
        for c in 0..4 {
            left[f][perm[c]] = left_nt[f][c];
            right[perm[c]][f] = right_nt[c][f];
        }
    }
    Ok(CharBasis2D { left, right })
}

impl Solver for Euler2D {
    type Field = Field2D<4>;

    fn fill_ghosts(&self, field: &mut Field2D<4>, t: f64) {
        fill_ghosts_2d(field, &self.bc, t);
    }

    fn rhs(&self, field: &Field2D<4>, _t: f64) -> Result<Field2D<4>> {
        let (dx, dy) = (self.grid.dx, self.grid.dy);
        let (i0, j0) = self.extent();
        let xd = self.x_differences(field)?;
        let yd = self.y_differences(field)?;
        let mut out = Field2D::zeros(field.grid);
        for j in 0..self.grid.ny {
            for i in 0..self.grid.nx {
                if i >= i0 && j < j0 {
                    continue;
                }
                let first = if i >= i0 { j0 } else { 0 };
                let a = &xd[j][i];
                let b = &yd[i][j - first];
                let o = out.at_mut(i as isize, j as isize);
                for c in 0..4 {
                    o[c] = -(a[c] / dx + b[c] / dy);
                }
                if self.source == SourceTerm::RayleighTaylorGravity {
                    let u = field.at(i as isize, j as isize);
                    o[2] += u[0];
                    o[3] += u[2];
                }
            }
        }
        Ok(out)
    }

    fn timestep(&self, field: &Field2D<4>, cfl: f64) -> Result<f64> {
        timestep_2d(field, &self.gas, cfl, self.obstacle.as_ref())
    }

    fn check(&self, field: &Field2D<4>) -> Result<(f64, f64)> {
        let mut lo = (f64::INFINITY, f64::INFINITY);
        for j in 0..self.grid.ny {
            for i in 0..self.grid.nx {
                if self.is_solid(i, j) {
                    continue;
                }
                let w = cons_to_prim_2d(*field.at(i as isize, j as isize), &self.gas).map_err(|e| at_index(e, i, j))?;
                lo = (lo.0.min(w.rho), lo.1.min(w.p));
            }
        }
        Ok(lo)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euler::PrimState2D;
    use crate::solver::BoundaryCondition;

    #[test]
    fn roe_basis_2d_is_biorthogonal_and_diagonalises() {
        let gas = GasModel::air();
        let a = PrimState2D::new(1.3, 0.7, -0.4, 2.1).to_cons(&gas).to_array();
        for axis in [Axis::X, Axis::Y] {
            let b = roe_basis_2d(&a, &a, &gas, axis).unwrap();
            for f in 0..4 {
                for g in 0..4 {
                    let d: f64 = (0..4).map(|c| b.left[f][c] * b.right[c][g]).sum();
                    assert!((d - if f == g { 1.0 } else { 0.0 }).abs() < 1e-12, "{axis:?} {f} {g} {d}");
                }
            }
            // L A R is diagonal, with A the Jacobian by central differences.
            let h = 1e-6;
            let mut jac = [[0.0; 4]; 4];
            for c in 0..4 {
                let (mut up, mut dn) = (a, a);
                up[c] += h;
                dn[c] -= h;
                let (fu, fd) = (crate::euler::flux_2d(up, &gas, axis).unwrap(), crate::euler::flux_2d(dn, &gas, axis).unwrap());
                for r in 0..4 {
                    jac[r][c] = (fu[r] - fd[r]) / (2.0 * h);
                }
            }
            for f in 0..4 {
                for g in 0..4 {
                    if f == g {
                        continue;
                    }
                    let d: f64 = (0..4)
                        .map(|r| (0..4).map(|c| b.left[f][r] * jac[r][c] * b.right[c][g]).sum::<f64>())
                        .sum();
                    assert!(d.abs() < 1e-7, "{axis:?} {f} {g} {d}");
                }
            }
        }
    }

    #[test]
    fn gravity_source_on_still_gas() {
        let gas = GasModel::new(5.0 / 3.0).unwrap();
        let grid = Grid2D::new([0.0, 1.0, 0.0, 1.0], 10, 10).unwrap();
        let s = PrimState2D::new(2.0, 0.0, 0.0, 1.0).to_cons(&gas).to_array();
        let solver = Euler2D::new(grid, BoundarySpec2D::uniform(BoundaryCondition::Transmissive), gas, SchemeConfig::zn())
            .with_source(SourceTerm::RayleighTaylorGravity);
        let mut f = Field2D::from_fn(grid, |_, _| s);
        solver.fill_ghosts(&mut f, 0.0);
        let r = solver.rhs(&f, 0.0).unwrap();
        for j in 0..10 {
            for i in 0..10 {
                let o = r.at(i, j);
                assert!((o[2] - 2.0).abs() < 1e-12, "{o:?}");
                assert!(o[0].abs() < 1e-12 && o[1].abs() < 1e-12 && o[3].abs() < 1e-12);
            }
        }
    }

    #[test]
    fn free_stream_past_step_is_preserved_away_from_it() {
        let gas = GasModel::air();
        let grid = Grid2D::new([0.0, 3.0, 0.0, 1.0], 30, 10).unwrap();
        let s = PrimState2D::new(1.4, 0.0, 0.0, 1.0).to_cons(&gas).to_array();
        let solver = Euler2D::new(grid, BoundarySpec2D::uniform(BoundaryCondition::ReflectiveWall), gas, SchemeConfig::zn())
            .with_obstacle(Some(StepObstacle { x_start: 0.6, height: 0.2 }));
        let mut f = Field2D::from_fn(grid, |_, _| s);
        solver.fill_ghosts(&mut f, 0.0);
        let r = solver.rhs(&f, 0.0).unwrap();
        for j in 0..10 {
            for i in 0..30 {
                assert!(r.at(i, j).iter().all(|v| v.abs() < 1e-12));
            }
        }
    }
}
