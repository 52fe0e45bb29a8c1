use super::{Field1D, Field2D, Grid2D, GHOST};
use crate::euler::Axis;

/// Condition imposed on one side of the domain.
///
/// Fixed states are stored as conserved vectors with the component count of
/// the field they are applied to.
#[derive(Clone, Debug, PartialEq)]
pub enum BoundaryCondition {
    Periodic,
    /// Zero-gradient extrapolation.
    Transmissive,
    /// Mirror with the wall-normal momentum negated.
    ReflectiveWall,
    FixedState(Vec<f64>),
    /// Ghost states follow an oblique planar shock moving along the wall.
    PostShockMotion(ShockMotion),
    /// Conditions selected by the tangential coordinate of the boundary point.
    Piecewise(Vec<Segment>),
}

/// `condition` applies where the tangential coordinate is below `until`.
#[derive(Clone, Debug, PartialEq)]
pub struct Segment {
    pub until: f64,
    pub condition: BoundaryCondition,
}

/// An oblique shock through `(foot_x, 0)` at time zero, inclined at
/// `angle_deg` to the x axis and travelling with normal Mach speed `speed`
/// into the pre-shock gas.
#[derive(Clone, Debug, PartialEq)]
pub struct ShockMotion {
    pub foot_x: f64,
    pub angle_deg: f64,
    pub speed: f64,
    pub post: [f64; 4],
    pub pre: [f64; 4],
}

impl ShockMotion {
    /// x position of the shock at height `y` and time `t`.
    pub fn shock_x(&self, y: f64, t: f64) -> f64 {
        let th = self.angle_deg.to_radians();
        self.foot_x + y / th.tan() + self.speed * t / th.sin()
    }

    pub fn state(&self, x: f64, y: f64, t: f64) -> [f64; 4] {
        if x < self.shock_x(y, t) {
            self.post
        } else {
            self.pre
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundarySpec1D {
    pub left: BoundaryCondition,
    pub right: BoundaryCondition,
}

impl BoundarySpec1D {
    pub fn uniform(bc: BoundaryCondition) -> Self {
        Self { left: bc.clone(), right: bc }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundarySpec2D {
    pub left: BoundaryCondition,
    pub right: BoundaryCondition,
    pub bottom: BoundaryCondition,
    pub top: BoundaryCondition,
}

impl BoundarySpec2D {
    pub fn uniform(bc: BoundaryCondition) -> Self {
        Self { left: bc.clone(), right: bc.clone(), bottom: bc.clone(), top: bc }
    }
}

/// A forward-facing step: points with `x > x_start` and `y < height` are
/// solid and excluded from the solve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepObstacle {
    pub x_start: f64,
    pub height: f64,
}

impl StepObstacle {
    /// First solid column and number of solid rows on `grid`.
    pub fn extent(&self, grid: &Grid2D) -> (usize, usize) {
        let i0 = (0..grid.nx).find(|&i| grid.x(i) > self.x_start).unwrap_or(grid.nx);
        let j0 = (0..grid.ny).take_while(|&j| grid.y(j) < self.height).count();
        (i0, j0)
    }
}

pub(crate) fn reflect<const N: usize>(mut u: [f64; N], axis: Axis) -> [f64; N] {
    match (N, axis) {
        (1, _) => {}
        (3, _) | (4, Axis::X) => u[1] = -u[1],
        (4, Axis::Y) => u[2] = -u[2],
        _ => unreachable!("unsupported component count {N}"),
    }
    u
}

fn fixed<const N: usize>(v: &[f64]) -> [f64; N] {
    let mut u = [0.0; N];
    match v.len() {
        l if l == N => u.copy_from_slice(v),
        // A 2D state applied to a 1D Euler field drops the transverse momentum.
        4 if N == 3 => u = [v[0], v[1], v[3]].as_slice().try_into().unwrap(),
        l => panic!("fixed boundary state has {l} components, field has {N}"),
    }
    u
}

/// Ghost value for a 1D-style line end.
///
/// `interior(k)` is the k-th point inward from the boundary (k = 0 adjacent)
/// and `wrap(k)` the k-th point inward from the opposite end.
fn ghost_value<const N: usize>(
    bc: &BoundaryCondition,
    k: usize,
    axis: Axis,
    interior: impl Fn(usize) -> [f64; N],
    wrap: impl Fn(usize) -> [f64; N],
    at: (f64, f64, f64),
) -> [f64; N] {
    match bc {
        BoundaryCondition::Periodic => wrap(k),
        BoundaryCondition::Transmissive => interior(0),
        BoundaryCondition::ReflectiveWall => reflect(interior(k), axis),
        BoundaryCondition::FixedState(v) => fixed(v),
        BoundaryCondition::PostShockMotion(s) => fixed(&s.state(at.0, at.1, at.2)),
        BoundaryCondition::Piecewise(segments) => {
            let tangential = match axis {
                Axis::X => at.1,
                Axis::Y => at.0,
            };
            let seg = segments
                .iter()
                .find(|s| tangential < s.until)
                .or(segments.last())
                .expect("empty piecewise boundary");
            ghost_value(&seg.condition, k, axis, interior, wrap, at)
        }
    }
}

pub fn fill_ghosts_1d<const N: usize>(field: &mut Field1D<N>, bc: &BoundarySpec1D, t: f64) {
    let n = field.n() as isize;
    let grid = field.grid;
    for k in 0..GHOST {
        let ki = k as isize;
        let x = grid.x0 - (k as f64 + 0.5) * grid.dx;
        let v = ghost_value(
            &bc.left,
            k,
            Axis::X,
            |m| *field.at(m as isize),
            |m| *field.at(n - 1 - m as isize),
            (x, 0.0, t),
        );
        *field.at_mut(-1 - ki) = v;

        let x = grid.x1 + (k as f64 + 0.5) * grid.dx;
        let v = ghost_value(
            &bc.right,
            k,
            Axis::X,
            |m| *field.at(n - 1 - m as isize),
            |m| *field.at(m as isize),
            (x, 0.0, t),
        );
        *field.at_mut(n + ki) = v;
    }
}

/// Fills the side ghost strips; corner ghosts are never read by the
/// dimension-by-dimension sweeps and are left untouched.
pub fn fill_ghosts_2d<const N: usize>(field: &mut Field2D<N>, bc: &BoundarySpec2D, t: f64) {
    let grid = field.grid;
    let (nx, ny) = (grid.nx as isize, grid.ny as isize);
    for j in 0..ny {
        let y = grid.y(j as usize);
        for k in 0..GHOST {
            let ki = k as isize;
            let x = grid.x0 - (k as f64 + 0.5) * grid.dx;
            let v = ghost_value(
                &bc.left,
                k,
                Axis::X,
                |m| *field.at(m as isize, j),
                |m| *field.at(nx - 1 - m as isize, j),
                (x, y, t),
            );
            *field.at_mut(-1 - ki, j) = v;

            let x = grid.x1 + (k as f64 + 0.5) * grid.dx;
            let v = ghost_value(
                &bc.right,
                k,
                Axis::X,
                |m| *field.at(nx - 1 - m as isize, j),
                |m| *field.at(m as isize, j),
                (x, y, t),
            );
            *field.at_mut(nx + ki, j) = v;
        }
    }
    for i in 0..nx {
        let x = grid.x(i as usize);
        for k in 0..GHOST {
            let ki = k as isize;
            let y = grid.y0 - (k as f64 + 0.5) * grid.dy;
            let v = ghost_value(
                &bc.bottom,
                k,
                Axis::Y,
                |m| *field.at(i, m as isize),
                |m| *field.at(i, ny - 1 - m as isize),
                (x, y, t),
            );
            *field.at_mut(i, -1 - ki) = v;

            let y = grid.y1 + (k as f64 + 0.5) * grid.dy;
            let v = ghost_value(
                &bc.top,
                k,
                Axis::Y,
                |m| *field.at(i, ny - 1 - m as isize),
                |m| *field.at(i, m as isize),
                (x, y, t),
            );
            *field.at_mut(i, ny + ki) = v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::Grid1D;

    #[test]
    fn periodic_ghosts_wrap() {
        let grid = Grid1D::new(0.0, 1.0, 16).unwrap();
        let mut f = Field1D::<1>::from_fn(grid, |x| [(2.0 * std::f64::consts::PI * x).sin()]);
        fill_ghosts_1d(&mut f, &BoundarySpec1D::uniform(BoundaryCondition::Periodic), 0.0);
        for k in 1..=3isize {
            assert_eq!(f.at(-k), f.at(16 - k));
            assert_eq!(f.at(15 + k), f.at(k - 1));
        }
    }

    #[test]
    fn reflective_wall_mirrors_normal_momentum() {
        let grid = Grid2D::new([0.0, 1.0, 0.0, 1.0], 10, 10).unwrap();
        let mut f = Field2D::<4>::from_fn(grid, |x, y| [1.0 + x, 0.2, 0.5 + y, 3.0]);
        fill_ghosts_2d(&mut f, &BoundarySpec2D::uniform(BoundaryCondition::ReflectiveWall), 0.0);
        for k in 0..3isize {
            let inner = f.at(4, k);
            let ghost = f.at(4, -1 - k);
            assert_eq!(ghost[0], inner[0]);
            assert_eq!(ghost[1], inner[1]);
            assert_eq!(ghost[2], -inner[2]);
            assert_eq!(ghost[3], inner[3]);
            let inner = f.at(9 - k, 2);
            let ghost = f.at(10 + k, 2);
            assert_eq!(ghost[1], -inner[1]);
            assert_eq!(ghost[2], inner[2]);
        }
    }

    #[test]
    fn transmissive_and_fixed() {
        let grid = Grid1D::new(0.0, 1.0, 10).unwrap();
        let mut f = Field1D::<3>::from_fn(grid, |x| [1.0 + x, x, 2.0]);
        let bc = BoundarySpec1D {
            left: BoundaryCondition::Transmissive,
            right: BoundaryCondition::FixedState(vec![9.0, 8.0, 7.0]),
        };
        fill_ghosts_1d(&mut f, &bc, 0.0);
        for k in 1..=3isize {
            assert_eq!(f.at(-k), f.at(0));
            assert_eq!(f.at(9 + k), &[9.0, 8.0, 7.0]);
        }
    }

    #[test]
    fn oblique_shock_position() {
        let s = ShockMotion {
            foot_x: 1.0 / 6.0,
            angle_deg: 60.0,
            speed: 10.0,
            post: [8.0, 0.0, 0.0, 0.0],
            pre: [1.4, 0.0, 0.0, 0.0],
        };
        let x = s.shock_x(1.0, 0.0);
        assert!((x - (1.0 / 6.0 + 1.0 / 3f64.sqrt())).abs() < 1e-14);
        let x = s.shock_x(1.0, 0.2);
        assert!((x - (1.0 / 6.0 + (1.0 + 20.0 * 0.2) / 3f64.sqrt())).abs() < 1e-14);
        assert_eq!(s.state(0.0, 0.0, 0.0)[0], 8.0);
        assert_eq!(s.state(1.0, 0.0, 0.0)[0], 1.4);
    }

    #[test]
    fn piecewise_bottom_selects_by_x() {
        let grid = Grid2D::new([0.0, 1.0, 0.0, 1.0], 10, 10).unwrap();
        let mut f = Field2D::<4>::from_fn(grid, |_, _| [1.0, 0.0, 0.3, 2.0]);
        let bottom = BoundaryCondition::Piecewise(vec![
            Segment { until: 0.5, condition: BoundaryCondition::FixedState(vec![5.0, 0.0, 0.0, 5.0]) },
            Segment { until: f64::INFINITY, condition: BoundaryCondition::ReflectiveWall },
        ]);
        let bc = BoundarySpec2D { bottom, ..BoundarySpec2D::uniform(BoundaryCondition::Transmissive) };
        fill_ghosts_2d(&mut f, &bc, 0.0);
        assert_eq!(f.at(2, -1), &[5.0, 0.0, 0.0, 5.0]);
        assert_eq!(f.at(7, -1), &[1.0, 0.0, -0.3, 2.0]);
    }

    #[test]
    fn obstacle_extent() {
        let grid = Grid2D::new([0.0, 3.0, 0.0, 1.0], 300, 100).unwrap();
        let step = StepObstacle { x_start: 0.6, height: 0.2 };
        assert_eq!(step.extent(&grid), (60, 20));
    }
}
