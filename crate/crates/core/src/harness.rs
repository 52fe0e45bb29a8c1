//! Verification studies: critical-point convergence of the weights, the
//! smoothness-indicator diagnostics on a jump, grid-refinement of the
//! solvers, amplitude self-similarity and reference-solution comparison.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use f128::f128;
use num_traits::{Float, ToPrimitive};
use rayon::prelude::*;

use crate::kernel::{contribution_ratio, local_smoothness, reconstruct, tau5, tau8, SchemeConfig, StencilWindow};
use crate::problems::{linear_case1, ProblemSpec};
use crate::solver::{advance_to, BoundaryCondition, BoundarySpec1D, Field1D, Grid1D, ScalarAdvection1D, StepControl};
use crate::{Error, Result};

/// One level of a refinement study.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ConvergenceRecord {
    pub dx: f64,
    pub error: f64,
    /// `log2(e_coarse / e_fine)` against the previous level.
    pub order: Option<f64>,
}

/// Builds records from `(dx, error)` pairs with `dx` halving.
pub fn with_orders(levels: &[(f64, f64)]) -> Vec<ConvergenceRecord> {
    levels
        .iter()
        .enumerate()
        .map(|(l, &(dx, error))| ConvergenceRecord {
            dx,
            error,
            order: (l > 0).then(|| (levels[l - 1].1 / error).log2()),
        })
        .collect()
}

/// Coarsest spacing of the critical-point study.
pub const CRITICAL_POINT_DX0: f64 = 0.025;

fn q(v: f64) -> f128 {
    f128::from(v)
}

/// `x^k e^x` in quadruple precision.
fn critical_fn(x: f128, k: i32) -> f128 {
    x.powi(k) * x.exp()
}

/// Derivative error at `x = 0` for `f(x) = x^k e^x` with spacing `dx`.
///
/// The derivative is the flux difference `(h[1/2] - h[-1/2]) / dx` of the
/// upwind reconstruction from samples at `j dx`, `j = -3..=2`.  The study
/// runs in quadruple precision because the finest errors fall far below
/// `f64` round-off.
pub fn critical_point_error(k: u32, dx: f64, scheme: &SchemeConfig) -> f64 {
    let h = q(dx);
    let s: Vec<f128> = (-3..=2).map(|j| critical_fn(q(j as f64) * h, k as i32)).collect();
    let right = StencilWindow([s[1], s[2], s[3], s[4], s[5]]);
    let left = StencilWindow([s[0], s[1], s[2], s[3], s[4]]);
    let d = (reconstruct(&right, scheme) - reconstruct(&left, scheme)) / h;
    let exact = if k == 1 { q(1.0) } else { q(0.0) };
    (d - exact).abs().to_f64().unwrap()
}

pub fn critical_point_study(k: u32, scheme: &SchemeConfig, levels: usize) -> Result<Vec<ConvergenceRecord>> {
    if !(1..=3).contains(&k) {
        return Err(Error::InvalidConfig(format!("critical point order must be 1, 2 or 3, got {k}")));
    }
    if levels < 3 {
        return Err(Error::InvalidConfig("a convergence study needs at least 3 levels".into()));
    }
    scheme.validate()?;
    let pairs: Vec<(f64, f64)> = (0..levels)
        .into_par_iter()
        .map(|l| {
            let dx = CRITICAL_POINT_DX0 / 2f64.powi(l as i32);
            (dx, critical_point_error(k, dx, scheme))
        })
        .collect();
    Ok(with_orders(&pairs))
}

/// One node of the indicator diagnostics on the jump profile.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct Table2Row {
    pub x: f64,
    pub u0: f64,
    pub tau5: f64,
    pub tau8: f64,
    /// WENO-Z contribution ratio.
    pub r: f64,
    /// WENO-ZN contribution ratio.
    pub r_prime: f64,
}

/// The sine-with-jump profile taking the left branch at the jump node.
pub fn jump_profile_left(x: f64) -> f64 {
    let u = -(std::f64::consts::PI * x).sin() - 0.5 * x * x * x;
    if x > 0.0 {
        u + 1.0
    } else {
        u
    }
}

pub fn table2_row(m: i32, dx: f64) -> Table2Row {
    let x = m as f64 * dx;
    let w = StencilWindow(std::array::from_fn(|j| jump_profile_left((m + j as i32 - 2) as f64 * dx)));
    let s = local_smoothness(&w);
    let z = SchemeConfig::z().with_epsilon(1e-40);
    let zn = SchemeConfig::zn().with_epsilon(1e-40).with_a_const(10.0);
    Table2Row {
        x,
        u0: jump_profile_left(x),
        tau5: tau5(&s),
        tau8: tau8(&w),
        r: contribution_ratio(&w, &z),
        r_prime: contribution_ratio(&w, &zn),
    }
}

/// Rows at the eight nodes `x = -3 dx ..= 4 dx` around the jump.
pub fn table2_diagnostics(grid_dx: f64) -> Vec<Table2Row> {
    (-3..=4).map(|m| table2_row(m, grid_dx)).collect()
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct TauCoefficients {
    /// Coefficients for a unit jump in gaps `(i-2,i-1)`, `(i-1,i)`,
    /// `(i,i+1)`, `(i+1,i+2)`.
    pub tau5: [f64; 4],
    pub tau8: [f64; 4],
    pub pass: bool,
}

pub const TAU5_COEFFICIENTS: [f64; 4] = [4.0 / 3.0, 10.0 / 3.0, 10.0 / 3.0, 4.0 / 3.0];
pub const TAU8_COEFFICIENTS: [f64; 4] = [1.0, 9.0, 9.0, 1.0];

/// Evaluates both global indicators on the four unit-jump windows.
pub fn tau_coefficient_check() -> TauCoefficients {
    let mut t5 = [0.0; 4];
    let mut t8 = [0.0; 4];
    for gap in 0..4 {
        let w = StencilWindow(std::array::from_fn(|j| if j > gap { 1.0 } else { 0.0 }));
        t5[gap] = tau5(&local_smoothness(&w));
        t8[gap] = tau8(&w);
    }
    let close = |a: &[f64; 4], b: &[f64; 4]| a.iter().zip(b).all(|(x, y)| (x - y).abs() <= 1e-14);
    let pass = close(&t5, &TAU5_COEFFICIENTS) && close(&t8, &TAU8_COEFFICIENTS);
    TauCoefficients { tau5: t5, tau8: t8, pass }
}

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct ErrorNorms {
    pub l1: f64,
    pub l2: f64,
    pub linf: f64,
}

/// Discrete mean-L1, RMS and max norms of `numerical - reference`.
///
/// A finer reference is accepted when its size is an odd multiple of the
/// numerical one, in which case the coinciding nodes are compared.
pub fn error_norms(numerical: &[f64], reference: &[f64]) -> Result<ErrorNorms> {
    let n = numerical.len();
    if n == 0 || reference.len() % n != 0 || (reference.len() / n) % 2 == 0 {
        return Err(Error::GridMismatch(format!(
            "cannot compare {n} nodes against a {}-node reference",
            reference.len()
        )));
    }
    let r = reference.len() / n;
    let (mut l1, mut l2, mut linf) = (0.0, 0.0, 0.0f64);
    for (i, v) in numerical.iter().enumerate() {
        let e = (v - reference[i * r + r / 2]).abs();
        l1 += e;
        l2 += e * e;
        linf = linf.max(e);
    }
    Ok(ErrorNorms { l1: l1 / n as f64, l2: (l2 / n as f64).sqrt(), linf })
}

/// Piecewise-linear interpolation of `(xs, ys)` at `at`; `xs` increasing,
/// constant extrapolation outside.
pub fn interpolate_linear(xs: &[f64], ys: &[f64], at: &[f64]) -> Vec<f64> {
    at.iter()
        .map(|&x| {
            let k = xs.partition_point(|&v| v <= x);
            if k == 0 {
                ys[0]
            } else if k == xs.len() {
                ys[xs.len() - 1]
            } else {
                let t = (x - xs[k - 1]) / (xs[k] - xs[k - 1]);
                ys[k - 1] + t * (ys[k] - ys[k - 1])
            }
        })
        .collect()
}

/// L-infinity refinement study of periodic advection of `sin(pi x)` on
/// `[-1, 1]` to time `t_end`.
///
/// The step is `sigma dx (dx / dx0)^(2/3)`, so the third-order time error
/// shrinks like `dx^5` together with the spatial error.
pub fn advection_convergence(
    scheme: &SchemeConfig,
    n0: usize,
    levels: usize,
    t_end: f64,
    sigma: f64,
) -> Result<Vec<ConvergenceRecord>> {
    let pi = std::f64::consts::PI;
    let dx0 = 2.0 / n0 as f64;
    let pairs = (0..levels)
        .map(|l| {
            let n = n0 << l;
            let grid = Grid1D::new(-1.0, 1.0, n)?;
            let solver = ScalarAdvection1D {
                grid,
                bc: BoundarySpec1D::uniform(BoundaryCondition::Periodic),
                speed: 1.0,
                scheme: *scheme,
            };
            let field = Field1D::from_fn(grid, |x| [(pi * x).sin()]);
            let dt = sigma * grid.dx * (grid.dx / dx0).powf(2.0 / 3.0);
            let (out, _) = advance_to(&solver, field, t_end, StepControl::Fixed(dt))?;
            let err = (0..n)
                .map(|i| (out.interior()[i][0] - (pi * (grid.x(i) - t_end)).sin()).abs())
                .fold(0.0, f64::max);
            Ok((grid.dx, err))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(with_orders(&pairs))
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct SimilarityEntry {
    pub scheme: SchemeConfig,
    /// `max_A max_i |A u_A - u_1| / max_i |u_1|`.
    pub deviation: f64,
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct SimilarityReport {
    pub amplitudes: Vec<f64>,
    pub entries: Vec<SimilarityEntry>,
}

pub const SIMILARITY_AMPLITUDES: [f64; 3] = [0.01, 1.0, 100.0];

/// Runs the first advection profile at each amplitude (N points, CFL 0.5,
/// to `t_end`) and measures how far the rescaled solutions drift apart.
pub fn similarity_study(schemes: &[SchemeConfig], amplitudes: &[f64], n: usize, t_end: f64) -> Result<SimilarityReport> {
    let run = |scheme: &SchemeConfig, a: f64| -> Result<Vec<f64>> {
        let (solver, field) = linear_case1(a)?.scalar_setup(n, *scheme)?;
        let dt = 0.5 * solver.grid.dx;
        let (out, _) = advance_to(&solver, field, t_end, StepControl::Fixed(dt))?;
        Ok(out.component(0).into_iter().map(|v| v * a).collect())
    };
    let entries = schemes
        .iter()
        .map(|scheme| {
            scheme.validate()?;
            let base = run(scheme, 1.0)?;
            let scale = base.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let mut deviation = 0.0f64;
            for &a in amplitudes {
                let u = if a == 1.0 { base.clone() } else { run(scheme, a)? };
                for (x, y) in u.iter().zip(&base) {
                    deviation = deviation.max((x - y).abs() / scale);
                }
            }
            Ok(SimilarityEntry { scheme: *scheme, deviation })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SimilarityReport { amplitudes: amplitudes.to_vec(), entries })
}

/// A cached 1D reference run, stored as interior conserved values.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ReferenceSolution {
    pub problem: String,
    pub scheme: String,
    pub n: usize,
    pub cfl: f64,
    pub t: f64,
    pub x: Vec<f64>,
    pub state: Vec<[f64; 3]>,
}

impl ReferenceSolution {
    pub fn density(&self) -> Vec<f64> {
        self.state.iter().map(|u| u[0]).collect()
    }
}

pub fn reference_cache_path(dir: &Path, problem: &str, n: usize, cfl: f64) -> PathBuf {
    dir.join(format!("{problem}-z-n{n}-cfl{cfl}.json"))
}

/// WENO-Z solution of a 1D Euler problem at `n` points, loaded from
/// `cache_dir` if present and stored there otherwise.
pub fn reference_solution(spec: &ProblemSpec, n: usize, cfl: f64, cache_dir: Option<&Path>) -> Result<ReferenceSolution> {
    let path = cache_dir.map(|d| reference_cache_path(d, spec.id, n, cfl));
    if let Some(p) = &path {
        if let Ok(text) = std::fs::read_to_string(p) {
            if let Ok(r) = serde_json::from_str::<ReferenceSolution>(&text) {
                if r.n == n && r.problem == spec.id {
                    return Ok(r);
                }
            }
        }
    }
    let (solver, field) = spec.euler1d_setup(n, SchemeConfig::z())?;
    let (out, diag) = advance_to(&solver, field, spec.t_end, StepControl::Cfl(cfl))?;
    let r = ReferenceSolution {
        problem: spec.id.to_string(),
        scheme: "z".into(),
        n,
        cfl,
        t: diag.t,
        x: solver.grid.coordinates(),
        state: out.interior().to_vec(),
    };
    if let Some(p) = &path {
        if let Some(d) = p.parent() {
            std::fs::create_dir_all(d)?;
        }
        std::fs::write(p, serde_json::to_string(&r)?)?;
    }
    Ok(r)
}

fn order_cell(order: Option<f64>) -> String {
    order.map_or_else(|| "---".to_string(), |o| format!("{o:.3}"))
}

/// Refinement tables side by side: `dx,<label>_error,<label>_order,...`.
pub fn convergence_csv(columns: &[(String, Vec<ConvergenceRecord>)]) -> String {
    let mut out = String::from("dx");
    for (label, _) in columns {
        write!(out, ",{label}_error,{label}_order").unwrap();
    }
    out.push('\n');
    let rows = columns.iter().map(|c| c.1.len()).max().unwrap_or(0);
    for r in 0..rows {
        let dx = columns.iter().find_map(|c| c.1.get(r)).map(|rec| rec.dx).unwrap();
        write!(out, "{dx:.4e}").unwrap();
        for (_, recs) in columns {
            match recs.get(r) {
                Some(rec) => write!(out, ",{:.4e},{}", rec.error, order_cell(rec.order)).unwrap(),
                None => out.push_str(",,"),
            }
        }
        out.push('\n');
    }
    out
}

pub fn table2_csv(rows: &[Table2Row]) -> String {
    let mut out = String::from("x,u0,tau5,tau8,R,R_prime\n");
    for r in rows {
        writeln!(out, "{:.2},{:.4e},{:.4e},{:.4e},{:.4e},{:.4e}", r.x, r.u0, r.tau5, r.tau8, r.r, r.r_prime).unwrap();
    }
    out
}

pub fn similarity_csv(report: &SimilarityReport) -> String {
    let mut out = String::from("scheme,epsilon,q,deviation\n");
    for e in &report.entries {
        writeln!(out, "{},{:e},{},{:.6e}", e.scheme.kind, e.scheme.epsilon, e.scheme.q_power, e.deviation).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_from_pairs() {
        let r = with_orders(&[(0.1, 1e-2), (0.05, 1e-2 / 32.0)]);
        assert_eq!(r[0].order, None);
        assert!((r[1].order.unwrap() - 5.0).abs() < 1e-12);
    }

    #[test]
    fn norms() {
        let a = vec![1.0, 2.0, 3.0];
        assert_eq!(error_norms(&a, &a).unwrap(), ErrorNorms { l1: 0.0, l2: 0.0, linf: 0.0 });
        let b: Vec<f64> = a.iter().map(|v| v + 0.25).collect();
        let e = error_norms(&a, &b).unwrap();
        assert!((e.linf - 0.25).abs() < 1e-15 && (e.l1 - 0.25).abs() < 1e-15);
        let n = 1000;
        let s: Vec<f64> = (0..n).map(|i| ((i as f64 + 0.5) * 2.0 * std::f64::consts::PI / n as f64).sin()).collect();
        let e = error_norms(&s, &vec![0.0; n]).unwrap();
        assert!((e.l2 - 0.5f64.sqrt()).abs() < 1e-6);
        assert!(matches!(error_norms(&a, &[0.0; 4]), Err(Error::GridMismatch(_))));
        assert!(matches!(error_norms(&a, &[0.0; 6]), Err(Error::GridMismatch(_))));
        // Odd refinement compares coinciding centres.
        let fine = [9.0, 1.0, 9.0, 9.0, 2.0, 9.0, 9.0, 3.0, 9.0];
        assert_eq!(error_norms(&a, &fine).unwrap().linf, 0.0);
    }

    #[test]
    fn interpolation() {
        let xs = [0.0, 1.0, 2.0];
        let ys = [0.0, 10.0, 0.0];
        assert_eq!(interpolate_linear(&xs, &ys, &[-1.0, 0.5, 1.0, 1.75, 3.0]), vec![0.0, 5.0, 10.0, 2.5, 0.0]);
    }

    #[test]
    fn table1_coefficients() {
        let t = tau_coefficient_check();
        assert!(t.pass, "{t:?}");
    }

    #[test]
    fn critical_point_k1_is_fifth_order() {
        for cfg in [SchemeConfig::z(), SchemeConfig::za(), SchemeConfig::zn()] {
            let recs = critical_point_study(1, &cfg, 6).unwrap();
            let last = recs.last().unwrap().order.unwrap();
            assert!((last - 5.0).abs() < 0.05, "{:?} {recs:?}", cfg.kind);
            for w in recs.windows(2).skip(1) {
                assert!(w[1].order.unwrap() > w[0].order.unwrap() - 0.3);
            }
        }
    }

    #[test]
    fn table2_signs_follow_indicator_ordering() {
        for row in table2_diagnostics(0.02) {
            let m = (row.x / 0.02).round() as i32;
            let w = StencilWindow(std::array::from_fn(|j| jump_profile_left((m + j as i32 - 2) as f64 * 0.02)));
            let s = local_smoothness(&w);
            assert_eq!(row.r < 0.0, s.is2 > s.is0);
            assert_eq!(row.r_prime < 0.0, s.is2 > s.is0);
        }
    }

    #[test]
    fn csv_layout() {
        let recs = with_orders(&[(0.1, 1e-3), (0.05, 1e-4), (0.025, 1e-5)]);
        let csv = convergence_csv(&[("zn".into(), recs.clone()), ("z".into(), recs)]);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "dx,zn_error,zn_order,z_error,z_order");
        assert_eq!(lines.len(), 4);
        assert!(lines[1].ends_with(",---"));
    }

    #[test]
    fn reference_cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let spec = crate::problems::blast_waves();
        let mut short = spec.clone();
        short.t_end = 1e-4;
        let a = reference_solution(&short, 40, 0.5, Some(dir.path())).unwrap();
        assert!(reference_cache_path(dir.path(), "blast", 40, 0.5).exists());
        let b = reference_solution(&short, 40, 0.5, Some(dir.path())).unwrap();
        assert_eq!(a, b);
    }
}
