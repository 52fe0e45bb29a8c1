//! The benchmark configurations: three periodic advection profiles, two 1D
//! Euler shock problems and five 2D Euler problems.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::euler::{GasModel, PrimState1D, PrimState2D};
use crate::kernel::SchemeConfig;
use crate::solver::{
    BoundaryCondition, BoundarySpec1D, BoundarySpec2D, Euler1D, Euler2D, Field1D, Field2D, Grid1D, Grid2D,
    ScalarAdvection1D, Segment, ShockMotion, SourceTerm, StepObstacle,
};
use crate::{Error, Result};

/// Stable identifiers, in catalogue order.
pub const PROBLEM_IDS: [&str; 10] = [
    "advect1",
    "advect2",
    "advect3",
    "shu-osher",
    "blast",
    "riemann2d-1",
    "riemann2d-2",
    "rt",
    "dmr",
    "ffs",
];

pub type ScalarIc = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
pub type Euler1DIc = Arc<dyn Fn(f64) -> PrimState1D + Send + Sync>;
pub type Euler2DIc = Arc<dyn Fn(f64, f64) -> PrimState2D + Send + Sync>;

#[derive(Clone)]
pub enum InitialCondition {
    /// Linear advection with unit speed.
    Scalar(ScalarIc),
    Euler1D(Euler1DIc),
    Euler2D(Euler2DIc),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Boundaries {
    OneD(BoundarySpec1D),
    TwoD(BoundarySpec2D),
}

#[derive(Clone)]
pub struct ProblemSpec {
    pub id: &'static str,
    pub name: &'static str,
    /// `[x0, x1]` or `[x0, x1, y0, y1]`.
    pub bounds: Vec<f64>,
    pub gas: Option<GasModel>,
    pub ic: InitialCondition,
    pub bc: Boundaries,
    pub t_end: f64,
    /// Grid used in the published runs, `(nx, ny)`; `ny = 1` in 1D.
    pub default_grid: (usize, usize),
    /// Smaller grid for desk-scale runs.
    pub desk_grid: (usize, usize),
    pub source: SourceTerm,
    pub obstacle: Option<StepObstacle>,
    /// Amplitude divisor of the first advection profile.
    pub amplitude: Option<f64>,
}

impl std::fmt::Debug for ProblemSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ProblemSpec")
            .field("id", &self.id)
            .field("bounds", &self.bounds)
            .field("t_end", &self.t_end)
            .field("default_grid", &self.default_grid)
            .finish_non_exhaustive()
    }
}

impl ProblemSpec {
    /// Looks a problem up by CLI identifier.  `amplitude` only affects
    /// `advect1`.
    pub fn by_id(id: &str, amplitude: Option<f64>) -> Result<Self> {
        Ok(match id {
            "advect1" => linear_case1(amplitude.unwrap_or(1.0))?,
            "advect2" => linear_case2(),
            "advect3" => linear_case3(),
            "shu-osher" => shu_osher(),
            "blast" => blast_waves(),
            "riemann2d-1" => riemann2d_case1(),
            "riemann2d-2" => riemann2d_case2(),
            "rt" => rayleigh_taylor(),
            "dmr" => double_mach(),
            "ffs" => forward_step(),
            other => {
                return Err(Error::InvalidConfig(format!(
                    "unknown problem '{other}', expected one of {}",
                    PROBLEM_IDS.join("|")
                )))
            }
        })
    }

    pub fn all() -> Vec<Self> {
        PROBLEM_IDS.iter().map(|id| Self::by_id(id, None).unwrap()).collect()
    }

    pub fn is_2d(&self) -> bool {
        matches!(self.ic, InitialCondition::Euler2D(_))
    }

    fn bc_1d(&self) -> Result<BoundarySpec1D> {
        match &self.bc {
            Boundaries::OneD(b) => Ok(b.clone()),
            Boundaries::TwoD(_) => Err(Error::InvalidConfig(format!("{} is two-dimensional", self.id))),
        }
    }

    fn grid_1d(&self, n: usize) -> Result<Grid1D> {
        Grid1D::new(self.bounds[0], self.bounds[1], n)
    }

    pub fn scalar_setup(&self, n: usize, scheme: SchemeConfig) -> Result<(ScalarAdvection1D, Field1D<1>)> {
        let InitialCondition::Scalar(ic) = &self.ic else {
            return Err(Error::InvalidConfig(format!("{} is not a scalar problem", self.id)));
        };
        let grid = self.grid_1d(n)?;
        let solver = ScalarAdvection1D { grid, bc: self.bc_1d()?, speed: 1.0, scheme };
        Ok((solver, Field1D::from_fn(grid, |x| [ic(x)])))
    }

    pub fn euler1d_setup(&self, n: usize, scheme: SchemeConfig) -> Result<(Euler1D, Field1D<3>)> {
        let InitialCondition::Euler1D(ic) = &self.ic else {
            return Err(Error::InvalidConfig(format!("{} is not a 1D Euler problem", self.id)));
        };
        let gas = self.gas.expect("Euler problems carry a gas model");
        let grid = self.grid_1d(n)?;
        let solver = Euler1D::new(grid, self.bc_1d()?, gas, scheme);
        Ok((solver, Field1D::from_fn(grid, |x| ic(x).to_cons(&gas).to_array())))
    }

    pub fn euler2d_setup(&self, nx: usize, ny: usize, scheme: SchemeConfig) -> Result<(Euler2D, Field2D<4>)> {
        let InitialCondition::Euler2D(ic) = &self.ic else {
            return Err(Error::InvalidConfig(format!("{} is not a 2D problem", self.id)));
        };
        let Boundaries::TwoD(bc) = &self.bc else { unreachable!() };
        let gas = self.gas.expect("Euler problems carry a gas model");
        let grid = Grid2D::new(self.bounds[..4].try_into().unwrap(), nx, ny)?;
        let solver = Euler2D::new(grid, bc.clone(), gas, scheme)
            .with_source(self.source)
            .with_obstacle(self.obstacle);
        Ok((solver, Field2D::from_fn(grid, |x, y| ic(x, y).to_cons(&gas).to_array())))
    }
}

fn periodic_1d() -> Boundaries {
    Boundaries::OneD(BoundarySpec1D::uniform(BoundaryCondition::Periodic))
}

fn advection(id: &'static str, name: &'static str, ic: ScalarIc, amplitude: Option<f64>) -> ProblemSpec {
    ProblemSpec {
        id,
        name,
        bounds: vec![-1.0, 1.0],
        gas: None,
        ic: InitialCondition::Scalar(ic),
        bc: periodic_1d(),
        t_end: 6.0,
        default_grid: (200, 1),
        desk_grid: (200, 1),
        source: SourceTerm::None,
        obstacle: None,
        amplitude,
    }
}

/// Gaussians, square wave, triangle and half ellipse, divided by `a`.
pub fn linear_case1_profile(x: f64, a: f64) -> f64 {
    let (a_c, z, delta, alpha) = (0.5, -0.7, 0.005, 10.0);
    let beta = 2f64.ln() / (36.0 * delta * delta);
    let g = |z: f64| (-beta * (x - z) * (x - z)).exp();
    let f = |c: f64| (1.0 - alpha * alpha * (x - c) * (x - c)).max(0.0).sqrt();
    let u = if (-0.8..=-0.6).contains(&x) {
        (g(z - delta) + g(z + delta) + 4.0 * g(z)) / 6.0
    } else if (-0.4..=-0.2).contains(&x) {
        1.0
    } else if (0.0..=0.2).contains(&x) {
        1.0 - (10.0 * (x - 0.1)).abs()
    } else if (0.4..=0.6).contains(&x) {
        (f(a_c - delta) + f(a_c + delta) + 4.0 * f(a_c)) / 6.0
    } else {
        0.0
    };
    u / a
}

pub fn linear_case1(amplitude: f64) -> Result<ProblemSpec> {
    if !(amplitude > 0.0) {
        return Err(Error::InvalidConfig(format!("amplitude must be positive, got {amplitude}")));
    }
    Ok(advection(
        "advect1",
        "linear advection: Gaussians, square, triangle and ellipse",
        Arc::new(move |x| linear_case1_profile(x, amplitude)),
        Some(amplitude),
    ))
}

/// `-sin(pi x) - x^3/2`, plus one on `x >= 0`.
pub fn linear_case2_profile(x: f64) -> f64 {
    let u = -(PI * x).sin() - 0.5 * x * x * x;
    if x >= 0.0 {
        u + 1.0
    } else {
        u
    }
}

pub fn linear_case2() -> ProblemSpec {
    advection("advect2", "linear advection: sine with a unit jump", Arc::new(linear_case2_profile), None)
}

pub fn linear_case3_profile(x: f64) -> f64 {
    if x < -1.0 / 3.0 {
        -x * (1.5 * PI * x * x).sin()
    } else if x <= 1.0 / 3.0 {
        (2.0 * PI * x).sin().abs()
    } else {
        2.0 * x - 1.0 - (3.0 * PI * x).sin() / 6.0
    }
}

pub fn linear_case3() -> ProblemSpec {
    advection("advect3", "linear advection: piecewise smooth profile", Arc::new(linear_case3_profile), None)
}

fn euler_1d(
    id: &'static str,
    name: &'static str,
    bounds: [f64; 2],
    bc: BoundaryCondition,
    t_end: f64,
    n: usize,
    ic: Euler1DIc,
) -> ProblemSpec {
    ProblemSpec {
        id,
        name,
        bounds: bounds.to_vec(),
        gas: Some(GasModel::air()),
        ic: InitialCondition::Euler1D(ic),
        bc: Boundaries::OneD(BoundarySpec1D::uniform(bc)),
        t_end,
        default_grid: (n, 1),
        desk_grid: (n, 1),
        source: SourceTerm::None,
        obstacle: None,
        amplitude: None,
    }
}

pub fn shu_osher() -> ProblemSpec {
    euler_1d(
        "shu-osher",
        "Shu-Osher shock / entropy wave interaction",
        [-5.0, 5.0],
        BoundaryCondition::Transmissive,
        1.8,
        300,
        Arc::new(|x| {
            if x < -4.0 {
                PrimState1D::new(3.857143, 2.629369, 31.0 / 3.0)
            } else {
                PrimState1D::new(1.0 + 0.2 * (5.0 * x).sin(), 0.0, 1.0)
            }
        }),
    )
}

pub fn blast_waves() -> ProblemSpec {
    euler_1d(
        "blast",
        "two interacting blast waves",
        [0.0, 1.0],
        BoundaryCondition::ReflectiveWall,
        0.038,
        400,
        Arc::new(|x| {
            let p = if x < 0.1 {
                1000.0
            } else if x < 0.9 {
                0.01
            } else {
                100.0
            };
            PrimState1D::new(1.0, 0.0, p)
        }),
    )
}

#[allow(clippy::too_many_arguments)]
fn euler_2d(
    id: &'static str,
    name: &'static str,
    bounds: [f64; 4],
    gas: GasModel,
    bc: BoundarySpec2D,
    t_end: f64,
    default_grid: (usize, usize),
    desk_grid: (usize, usize),
    ic: Euler2DIc,
) -> ProblemSpec {
    ProblemSpec {
        id,
        name,
        bounds: bounds.to_vec(),
        gas: Some(gas),
        ic: InitialCondition::Euler2D(ic),
        bc: Boundaries::TwoD(bc),
        t_end,
        default_grid,
        desk_grid,
        source: SourceTerm::None,
        obstacle: None,
        amplitude: None,
    }
}

fn quadrants(split: (f64, f64), states: [PrimState2D; 4]) -> Euler2DIc {
    // Order: upper right, upper left, lower left, lower right.
    Arc::new(move |x, y| {
        let right = x >= split.0;
        let upper = y >= split.1;
        match (right, upper) {
            (true, true) => states[0],
            (false, true) => states[1],
            (false, false) => states[2],
            (true, false) => states[3],
        }
    })
}

pub fn riemann2d_case1() -> ProblemSpec {
    euler_2d(
        "riemann2d-1",
        "2D Riemann problem, four shocks",
        [0.0, 1.0, 0.0, 1.0],
        GasModel::air(),
        BoundarySpec2D::uniform(BoundaryCondition::Transmissive),
        0.8,
        (400, 400),
        (200, 200),
        quadrants(
            (0.8, 0.8),
            [
                PrimState2D::new(1.5, 0.0, 0.0, 1.5),
                PrimState2D::new(0.5323, 1.206, 0.0, 0.3),
                PrimState2D::new(0.138, 1.206, 1.206, 0.029),
                PrimState2D::new(0.5323, 0.0, 1.206, 0.3),
            ],
        ),
    )
}

pub fn riemann2d_case2() -> ProblemSpec {
    let ic: Euler2DIc = Arc::new(|x, y| match (x > 0.5, y > 0.5) {
        (true, true) => PrimState2D::new(0.5313, 0.0, 0.0, 0.4),
        (false, true) => PrimState2D::new(1.0, 0.7276, 0.0, 1.0),
        (false, false) => PrimState2D::new(0.8, 0.0, 0.0, 1.0),
        (true, false) => PrimState2D::new(1.0, 0.0, 0.7276, 1.0),
    });
    euler_2d(
        "riemann2d-2",
        "2D Riemann problem, shocks and slip lines",
        [0.0, 1.0, 0.0, 1.0],
        GasModel::air(),
        BoundarySpec2D::uniform(BoundaryCondition::Transmissive),
        0.25,
        (1200, 1200),
        (300, 300),
        ic,
    )
}

pub fn rayleigh_taylor() -> ProblemSpec {
    let gas = GasModel::new(5.0 / 3.0).unwrap();
    let g = gas.gamma;
    let fixed = |w: PrimState2D| BoundaryCondition::FixedState(w.to_cons(&gas).to_array().to_vec());
    let bc = BoundarySpec2D {
        left: BoundaryCondition::ReflectiveWall,
        right: BoundaryCondition::ReflectiveWall,
        bottom: fixed(PrimState2D::new(2.0, 0.0, 0.0, 1.0)),
        top: fixed(PrimState2D::new(1.0, 0.0, 0.0, 2.5)),
    };
    let mut spec = euler_2d(
        "rt",
        "Rayleigh-Taylor instability",
        [0.0, 0.25, 0.0, 1.0],
        gas,
        bc,
        1.95,
        (120, 480),
        (60, 240),
        Arc::new(move |x, y| {
            let (rho, p) = if y < 0.5 { (2.0, 2.0 * y + 1.0) } else { (1.0, y + 1.5) };
            let c = (g * p / rho).sqrt();
            PrimState2D::new(rho, 0.0, -0.025 * c * (8.0 * PI * x).cos(), p)
        }),
    );
    spec.source = SourceTerm::RayleighTaylorGravity;
    spec
}

pub fn double_mach() -> ProblemSpec {
    let gas = GasModel::air();
    let th = PI / 6.0;
    let post = PrimState2D::new(8.0, 8.25 * th.cos(), -8.25 * th.sin(), 116.5);
    let pre = PrimState2D::new(1.4, 0.0, 0.0, 1.0);
    let (post_u, pre_u) = (post.to_cons(&gas).to_array(), pre.to_cons(&gas).to_array());
    let shock = ShockMotion { foot_x: 1.0 / 6.0, angle_deg: 60.0, speed: 10.0, post: post_u, pre: pre_u };
    let bc = BoundarySpec2D {
        left: BoundaryCondition::FixedState(post_u.to_vec()),
        right: BoundaryCondition::Transmissive,
        bottom: BoundaryCondition::Piecewise(vec![
            Segment { until: 1.0 / 6.0, condition: BoundaryCondition::FixedState(post_u.to_vec()) },
            Segment { until: f64::INFINITY, condition: BoundaryCondition::ReflectiveWall },
        ]),
        top: BoundaryCondition::PostShockMotion(shock),
    };
    euler_2d(
        "dmr",
        "double Mach reflection",
        [0.0, 4.0, 0.0, 1.0],
        gas,
        bc,
        0.2,
        (960, 240),
        (480, 120),
        Arc::new(move |x, y| if x < 1.0 / 6.0 + y / 3f64.sqrt() { post } else { pre }),
    )
}

pub fn forward_step() -> ProblemSpec {
    let gas = GasModel::air();
    let inflow = PrimState2D::new(1.4, 3.0, 0.0, 1.0);
    let bc = BoundarySpec2D {
        left: BoundaryCondition::FixedState(inflow.to_cons(&gas).to_array().to_vec()),
        right: BoundaryCondition::Transmissive,
        bottom: BoundaryCondition::ReflectiveWall,
        top: BoundaryCondition::ReflectiveWall,
    };
    let mut spec = euler_2d(
        "ffs",
        "Mach 3 flow over a forward-facing step",
        [0.0, 3.0, 0.0, 1.0],
        gas,
        bc,
        4.0,
        (600, 200),
        (300, 100),
        Arc::new(move |_, _| inflow),
    );
    spec.obstacle = Some(StepObstacle { x_start: 0.6, height: 0.2 });
    spec
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prim1(spec: &ProblemSpec, x: f64) -> PrimState1D {
        match &spec.ic {
            InitialCondition::Euler1D(f) => f(x),
            _ => panic!(),
        }
    }

    fn prim2(spec: &ProblemSpec, x: f64, y: f64) -> PrimState2D {
        match &spec.ic {
            InitialCondition::Euler2D(f) => f(x, y),
            _ => panic!(),
        }
    }

    #[test]
    fn advection_profiles() {
        assert_eq!(linear_case1_profile(-0.3, 1.0), 1.0);
        assert!((linear_case1_profile(0.1, 1.0) - 1.0).abs() < 1e-14);
        for i in 0..=400 {
            let x = -1.0 + i as f64 * 0.005;
            assert_eq!(linear_case1_profile(x, 100.0), linear_case1_profile(x, 1.0) / 100.0);
        }
        assert!((linear_case2_profile(-0.5) - 1.0625).abs() < 1e-15);
        assert_eq!(linear_case2_profile(0.0), 1.0);
        assert!((linear_case2_profile(1e-15) - linear_case2_profile(-1e-15) - 1.0).abs() < 1e-12);
        assert_eq!(linear_case3_profile(0.0), 0.0);
        assert!((linear_case3_profile(-0.5) - 0.5 * (3.0 * PI / 8.0).sin()).abs() < 1e-15);
        assert!((linear_case3_profile(0.5) - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn euler_1d_states() {
        let s = shu_osher();
        assert_eq!(prim1(&s, -4.5), PrimState1D::new(3.857143, 2.629369, 31.0 / 3.0));
        assert_eq!(prim1(&s, 0.0).rho, 1.0);
        assert!((prim1(&s, PI / 10.0).rho - 1.2).abs() < 1e-15);
        let b = blast_waves();
        assert_eq!(prim1(&b, 0.05).p, 1000.0);
        assert_eq!(prim1(&b, 0.5).p, 0.01);
        assert_eq!(prim1(&b, 0.95).p, 100.0);
    }

    #[test]
    fn riemann_states_and_symmetry() {
        let r1 = riemann2d_case1();
        assert_eq!(prim2(&r1, 0.2, 0.2), PrimState2D::new(0.138, 1.206, 1.206, 0.029));
        assert_eq!(prim2(&r1, 0.9, 0.9), PrimState2D::new(1.5, 0.0, 0.0, 1.5));
        assert_eq!(prim2(&r1, 0.1, 0.1), prim2(&r1, 0.7, 0.7));
        let r2 = riemann2d_case2();
        for (x, y) in [(0.1, 0.7), (0.3, 0.2), (0.9, 0.6), (0.7, 0.1)] {
            let a = prim2(&r2, x, y);
            let b = prim2(&r2, y, x);
            assert_eq!((a.rho, a.u, a.v, a.p), (b.rho, b.v, b.u, b.p));
        }
    }

    #[test]
    fn rayleigh_taylor_states() {
        let rt = rayleigh_taylor();
        let g = 5.0 / 3.0;
        let w = prim2(&rt, 0.0, 0.25);
        assert_eq!((w.rho, w.p), (2.0, 1.5));
        assert!((w.v + 0.025 * (g * 1.5 / 2.0f64).sqrt()).abs() < 1e-15);
        let w = prim2(&rt, 0.1, 0.75);
        assert_eq!((w.rho, w.p), (1.0, 2.25));
        let below = prim2(&rt, 0.1, 0.5 - 1e-12);
        let above = prim2(&rt, 0.1, 0.5);
        assert_eq!((below.rho, above.rho), (2.0, 1.0));
        assert!((below.p - 2.0).abs() < 1e-11 && above.p == 2.0);
    }

    #[test]
    fn double_mach_and_step() {
        let d = double_mach();
        let w = prim2(&d, 0.0, 0.0);
        assert_eq!(w.rho, 8.0);
        assert_eq!(w.p, 116.5);
        assert!((w.u - 8.25 * (PI / 6.0).cos()).abs() < 1e-15);
        assert_eq!(prim2(&d, 3.0, 0.0), PrimState2D::new(1.4, 0.0, 0.0, 1.0));
        assert_eq!(prim2(&d, 1.0 / 6.0 - 1e-12, 0.0).rho, 8.0);
        assert_eq!(prim2(&d, 1.0 / 6.0 + 1e-12, 0.0).rho, 1.4);

        let f = forward_step();
        let gas = f.gas.unwrap();
        let w = prim2(&f, 1.3, 0.7);
        assert_eq!(w, PrimState2D::new(1.4, 3.0, 0.0, 1.0));
        assert!((w.sound_speed(&gas).unwrap() - 1.0).abs() < 1e-15);
        let (solver, _) = f.euler2d_setup(300, 100, SchemeConfig::zn()).unwrap();
        assert!(solver.is_solid(61, 5));
        assert!(!solver.is_solid(59, 5));
        assert!(!solver.is_solid(61, 25));
    }

    #[test]
    fn every_entry_is_physical_at_a_million_points() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for spec in ProblemSpec::all() {
            let b = &spec.bounds;
            for _ in 0..1_000_000 {
                let x = rng.gen_range(b[0]..=b[1]);
                match &spec.ic {
                    InitialCondition::Scalar(f) => assert!(f(x).is_finite()),
                    InitialCondition::Euler1D(f) => {
                        let w = f(x);
                        assert!(w.rho > 0.0 && w.p > 0.0, "{} at {x}", spec.id);
                    }
                    InitialCondition::Euler2D(f) => {
                        let y = rng.gen_range(b[2]..=b[3]);
                        let w = f(x, y);
                        assert!(w.rho > 0.0 && w.p > 0.0, "{} at ({x}, {y})", spec.id);
                    }
                }
            }
        }
    }

    #[test]
    fn ids_round_trip() {
        for id in PROBLEM_IDS {
            assert_eq!(ProblemSpec::by_id(id, None).unwrap().id, id);
        }
        assert!(ProblemSpec::by_id("sod", None).is_err());
        assert!(linear_case1(0.0).is_err());
    }
}
