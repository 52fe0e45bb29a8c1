use std::time::Instant;

use super::boundary::StepObstacle;
use super::{Field1D, Field2D, FieldData, Solver};
use super::one_d::at_index;
use crate::euler::{cons_to_prim_1d, cons_to_prim_2d, sound_speed, GasModel, PrimState1D};
use crate::{Error, Result};

fn combine<F: FieldData>(out: &mut F, a: f64, u: &F, b: f64, v: &F, c: f64, l: &F) {
    for (((o, &x), &y), &z) in out.values_mut().iter_mut().zip(u.values()).zip(v.values()).zip(l.values()) {
        *o = a * x + b * y + c * z;
    }
}

/// One step of the three-stage TVD Runge–Kutta scheme.
///
/// `rhs` receives each stage value with stale ghosts and the stage time; it
/// may fill the ghosts in place before evaluating the operator.
pub fn rk3_step<F: FieldData>(
    u: &F,
    t: f64,
    dt: f64,
    mut rhs: impl FnMut(&mut F, f64) -> Result<F>,
) -> Result<F> {
    let mut stage = u.clone();
    let l0 = rhs(&mut stage, t)?;
    let mut u1 = u.clone();
    combine(&mut u1, 1.0, u, 0.0, u, dt, &l0);
    let l1 = rhs(&mut u1, t + dt)?;
    let mut u2 = u.clone();
    combine(&mut u2, 0.75, u, 0.25, &u1, 0.25 * dt, &l1);
    let l2 = rhs(&mut u2, t + 0.5 * dt)?;
    let mut out = u.clone();
    combine(&mut out, 1.0 / 3.0, u, 2.0 / 3.0, &u2, 2.0 / 3.0 * dt, &l2);
    Ok(out)
}

/// `sigma dx / max(|u| + c)` over the interior.
pub fn timestep_1d(field: &Field1D<3>, gas: &GasModel, sigma: f64) -> Result<f64> {
    let mut smax: f64 = 0.0;
    for (i, u) in field.interior().iter().enumerate() {
        let w = cons_to_prim_1d(*u, gas).map_err(|e| at_index(e, i, 0))?;
        smax = smax.max(w.u.abs() + sound_speed(&w, gas)?);
    }
    Ok(sigma * field.grid.dx / smax)
}

/// `sigma dtx dty / (dtx + dty)` with `dtx = dx / max(|u| + c)` and
/// `dty = dy / max(|v| + c)` over the fluid interior.
pub fn timestep_2d(field: &Field2D<4>, gas: &GasModel, sigma: f64, obstacle: Option<&StepObstacle>) -> Result<f64> {
    let grid = field.grid;
    let (i0, j0) = obstacle.map_or((grid.nx, 0), |s| s.extent(&grid));
    let (mut sx, mut sy): (f64, f64) = (0.0, 0.0);
    for j in 0..grid.ny {
        for i in 0..grid.nx {
            if i >= i0 && j < j0 {
                continue;
            }
            let w = cons_to_prim_2d(*field.at(i as isize, j as isize), gas).map_err(|e| at_index(e, i, j))?;
            let c = sound_speed(&PrimState1D::new(w.rho, 0.0, w.p), gas)?;
            sx = sx.max(w.u.abs() + c);
            sy = sy.max(w.v.abs() + c);
        }
    }
    let dtx = grid.dx / sx;
    let dty = grid.dy / sy;
    Ok(sigma * dtx * dty / (dtx + dty))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StepControl {
    /// CFL number applied to the solver's stability limit each step.
    Cfl(f64),
    Fixed(f64),
}

#[derive(Clone, Debug, Default, PartialEq, serde::Serialize)]
pub struct RunDiagnostics {
    pub steps: usize,
    pub t: f64,
    pub min_rho: f64,
    pub min_p: f64,
    /// Seconds.
    pub wall_time: f64,
}

fn annotate(e: Error, step: usize, t: f64) -> Error {
    match e {
        Error::NonphysicalState(mut s) => {
            s.step.get_or_insert(step);
            s.time.get_or_insert(t);
            Error::NonphysicalState(s)
        }
        other => other,
    }
}

/// Advances `field` from `t = 0` to `t_end`.
pub fn advance_to<S: Solver>(
    solver: &S,
    field: S::Field,
    t_end: f64,
    control: StepControl,
) -> Result<(S::Field, RunDiagnostics)> {
    advance_to_with(solver, field, 0.0, t_end, control, |_, _, _| Ok(()))
}

/// Advances from `t0` to `t_end`, calling `observe(field, t, step)` after
/// every completed step.  The last step is shortened to land on `t_end`.
pub fn advance_to_with<S: Solver>(
    solver: &S,
    mut field: S::Field,
    t0: f64,
    t_end: f64,
    control: StepControl,
    mut observe: impl FnMut(&S::Field, f64, usize) -> Result<()>,
) -> Result<(S::Field, RunDiagnostics)> {
    let start = Instant::now();
    let (min_rho, min_p) = solver.check(&field).map_err(|e| annotate(e, 0, t0))?;
    let mut diag = RunDiagnostics { steps: 0, t: t0, min_rho, min_p, wall_time: 0.0 };
    let mut t = t0;
    while t < t_end {
        let step = diag.steps + 1;
        let mut dt = match control {
            StepControl::Cfl(sigma) => solver.timestep(&field, sigma).map_err(|e| annotate(e, step, t))?,
            StepControl::Fixed(dt) => dt,
        };
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::InvalidConfig(format!("time step {dt} at t = {t}")));
        }
        if t + dt >= t_end || (t_end - (t + dt)) < 1e-12 * dt {
            dt = t_end - t;
        }
        field = rk3_step(&field, t, dt, |u, ts| {
            solver.fill_ghosts(u, ts);
            solver.rhs(u, ts)
        })
        .map_err(|e| annotate(e, step, t))?;
        t = if dt == t_end - t { t_end } else { t + dt };
        let (r, p) = solver.check(&field).map_err(|e| annotate(e, step, t))?;
        diag.min_rho = diag.min_rho.min(r);
        diag.min_p = diag.min_p.min(p);
        diag.steps = step;
        diag.t = t;
        observe(&field, t, step)?;
    }
    solver.fill_ghosts(&mut field, t);
    diag.wall_time = start.elapsed().as_secs_f64();
    Ok((field, diag))
}
