//! Ideal-gas algebra for the compressible Euler equations: equation of
//! state, wave speeds, the Roe-averaged characteristic basis used by the
//! 1D solver and the two flux-splitting strategies.

use crate::kernel::{reconstruct, reconstruct_mirrored, SchemeConfig, StencilWindow};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct GasModel {
    pub gamma: f64,
}

impl GasModel {
    pub fn new(gamma: f64) -> Result<Self> {
        if gamma > 1.0 {
            Ok(Self { gamma })
        } else {
            Err(Error::InvalidConfig(format!("ratio of specific heats must exceed 1, got {gamma}")))
        }
    }

    pub fn air() -> Self {
        Self { gamma: 1.4 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrimState1D {
    pub rho: f64,
    pub u: f64,
    pub p: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConsState1D {
    pub rho: f64,
    pub mom: f64,
    pub energy: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrimState2D {
    pub rho: f64,
    pub u: f64,
    pub v: f64,
    pub p: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConsState2D {
    pub rho: f64,
    pub mom_x: f64,
    pub mom_y: f64,
    pub energy: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
}

fn check_physical(rho: f64, p: f64) -> Result<()> {
    // Written so that NaN fails as well.
    if rho > 0.0 && p > 0.0 && rho.is_finite() && p.is_finite() {
        Ok(())
    } else {
        Err(Error::nonphysical(rho, p))
    }
}

impl PrimState1D {
    pub fn new(rho: f64, u: f64, p: f64) -> Self {
        Self { rho, u, p }
    }

    pub fn to_cons(&self, gas: &GasModel) -> ConsState1D {
        ConsState1D {
            rho: self.rho,
            mom: self.rho * self.u,
            energy: self.p / (gas.gamma - 1.0) + 0.5 * self.rho * self.u * self.u,
        }
    }
}

impl ConsState1D {
    pub fn from_array(a: [f64; 3]) -> Self {
        Self { rho: a[0], mom: a[1], energy: a[2] }
    }

    pub fn to_array(&self) -> [f64; 3] {
        [self.rho, self.mom, self.energy]
    }

    pub fn to_prim(&self, gas: &GasModel) -> Result<PrimState1D> {
        if !(self.rho > 0.0) {
            return Err(Error::nonphysical(self.rho, f64::NAN));
        }
        let u = self.mom / self.rho;
        let p = (gas.gamma - 1.0) * (self.energy - 0.5 * self.rho * u * u);
        check_physical(self.rho, p)?;
        Ok(PrimState1D { rho: self.rho, u, p })
    }
}

impl PrimState2D {
    pub fn new(rho: f64, u: f64, v: f64, p: f64) -> Self {
        Self { rho, u, v, p }
    }

    pub fn to_cons(&self, gas: &GasModel) -> ConsState2D {
        ConsState2D {
            rho: self.rho,
            mom_x: self.rho * self.u,
            mom_y: self.rho * self.v,
            energy: self.p / (gas.gamma - 1.0) + 0.5 * self.rho * (self.u * self.u + self.v * self.v),
        }
    }

    pub fn sound_speed(&self, gas: &GasModel) -> Result<f64> {
        check_physical(self.rho, self.p)?;
        Ok((gas.gamma * self.p / self.rho).sqrt())
    }
}

impl ConsState2D {
    pub fn from_array(a: [f64; 4]) -> Self {
        Self { rho: a[0], mom_x: a[1], mom_y: a[2], energy: a[3] }
    }

    pub fn to_array(&self) -> [f64; 4] {
        [self.rho, self.mom_x, self.mom_y, self.energy]
    }

    pub fn to_prim(&self, gas: &GasModel) -> Result<PrimState2D> {
        if !(self.rho > 0.0) {
            return Err(Error::nonphysical(self.rho, f64::NAN));
        }
        let u = self.mom_x / self.rho;
        let v = self.mom_y / self.rho;
        let p = (gas.gamma - 1.0) * (self.energy - 0.5 * self.rho * (u * u + v * v));
        check_physical(self.rho, p)?;
        Ok(PrimState2D { rho: self.rho, u, v, p })
    }
}

pub fn cons_to_prim_1d(u: [f64; 3], gas: &GasModel) -> Result<PrimState1D> {
    ConsState1D::from_array(u).to_prim(gas)
}

pub fn cons_to_prim_2d(u: [f64; 4], gas: &GasModel) -> Result<PrimState2D> {
    ConsState2D::from_array(u).to_prim(gas)
}

/// `sqrt(gamma p / rho)`.
pub fn sound_speed(s: &PrimState1D, gas: &GasModel) -> Result<f64> {
    check_physical(s.rho, s.p)?;
    Ok((gas.gamma * s.p / s.rho).sqrt())
}

/// `F(U) = (rho u, rho u^2 + p, u (E + p))`.
pub fn flux_1d(u: [f64; 3], gas: &GasModel) -> Result<[f64; 3]> {
    let w = cons_to_prim_1d(u, gas)?;
    Ok([u[1], u[1] * w.u + w.p, w.u * (u[2] + w.p)])
}

pub fn flux_2d(u: [f64; 4], gas: &GasModel, axis: Axis) -> Result<[f64; 4]> {
    let w = cons_to_prim_2d(u, gas)?;
    let un = match axis {
        Axis::X => w.u,
        Axis::Y => w.v,
    };
    let mut f = [u[0] * un, u[1] * un, u[2] * un, un * (u[3] + w.p)];
    match axis {
        Axis::X => f[1] += w.p,
        Axis::Y => f[2] += w.p,
    }
    Ok(f)
}

/// `|u| + c` of a 1D conserved state.
pub fn max_wave_speed_1d(u: [f64; 3], gas: &GasModel) -> Result<f64> {
    let w = cons_to_prim_1d(u, gas)?;
    Ok(w.u.abs() + sound_speed(&w, gas)?)
}

/// Left/right eigenvectors of the flux Jacobian at an interface state.
///
/// Rows of `left` are the left eigenvectors, columns of `right` the right
/// eigenvectors, ordered by eigenvalue `(u - c, u, u + c)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CharBasis1D {
    pub left: [[f64; 3]; 3],
    pub right: [[f64; 3]; 3],
    pub eigenvalues: [f64; 3],
}

impl CharBasis1D {
    /// Eigen-decomposition at a state given by velocity and total enthalpy.
    pub fn at(u: f64, enthalpy: f64, gas: &GasModel) -> Result<Self> {
        let g1 = gas.gamma - 1.0;
        let c2 = g1 * (enthalpy - 0.5 * u * u);
        if !(c2 > 0.0) || !c2.is_finite() {
            return Err(Error::nonphysical(f64::NAN, c2));
        }
        let c = c2.sqrt();
        let b1 = g1 / c2;
        let b2 = 0.5 * u * u * b1;
        let right = [
            [1.0, 1.0, 1.0],
            [u - c, u, u + c],
            [enthalpy - u * c, 0.5 * u * u, enthalpy + u * c],
        ];
        let left = [
            [0.5 * (b2 + u / c), -0.5 * (b1 * u + 1.0 / c), 0.5 * b1],
            [1.0 - b2, b1 * u, -b1],
            [0.5 * (b2 - u / c), -0.5 * (b1 * u - 1.0 / c), 0.5 * b1],
        ];
        Ok(Self { left, right, eigenvalues: [u - c, u, u + c] })
    }

    /// Characteristic variables `L x`.
    #[inline]
    pub fn project(&self, x: &[f64; 3]) -> [f64; 3] {
        let l = &self.left;
        [
            l[0][0] * x[0] + l[0][1] * x[1] + l[0][2] * x[2],
            l[1][0] * x[0] + l[1][1] * x[1] + l[1][2] * x[2],
            l[2][0] * x[0] + l[2][1] * x[1] + l[2][2] * x[2],
        ]
    }

    /// Back to conserved components, `R w`.
    #[inline]
    pub fn recombine(&self, w: &[f64; 3]) -> [f64; 3] {
        let r = &self.right;
        [
            r[0][0] * w[0] + r[0][1] * w[1] + r[0][2] * w[2],
            r[1][0] * w[0] + r[1][1] * w[1] + r[1][2] * w[2],
            r[2][0] * w[0] + r[2][1] * w[1] + r[2][2] * w[2],
        ]
    }
}

/// Characteristic basis at the Roe average of two conserved states.
pub fn roe_basis(left: &ConsState1D, right: &ConsState1D, gas: &GasModel) -> Result<CharBasis1D> {
    let wl = left.to_prim(gas)?;
    let wr = right.to_prim(gas)?;
    let sl = wl.rho.sqrt();
    let sr = wr.rho.sqrt();
    let hl = (left.energy + wl.p) / wl.rho;
    let hr = (right.energy + wr.p) / wr.rho;
    let u = (sl * wl.u + sr * wr.u) / (sl + sr);
    let h = (sl * hl + sr * hr) / (sl + sr);
    CharBasis1D::at(u, h, gas)
}

/// Lax–Friedrichs split fluxes in characteristic space around one interface.
///
/// `plus[m]` holds field `m` of `(L F + alpha L U) / 2` on points
/// `i-2..=i+2`, ready for [`reconstruct`]; `minus[m]` holds
/// `(L F - alpha L U) / 2` on `i-1..=i+3`, ready for [`reconstruct_mirrored`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SplitCharWindows {
    pub plus: [StencilWindow; 3],
    pub minus: [StencilWindow; 3],
}

/// `states` and `fluxes` are the six points `i-2..=i+3`; the interface is
/// between entries 2 and 3.
pub fn lf_split_char(
    states: &[[f64; 3]; 6],
    fluxes: &[[f64; 3]; 6],
    basis: &CharBasis1D,
    alpha: f64,
) -> SplitCharWindows {
    let mut plus = [[0.0; 5]; 3];
    let mut minus = [[0.0; 5]; 3];
    for p in 0..6 {
        let wu = basis.project(&states[p]);
        let wf = basis.project(&fluxes[p]);
        for m in 0..3 {
            if p < 5 {
                plus[m][p] = 0.5 * (wf[m] + alpha * wu[m]);
            }
            if p > 0 {
                minus[m][p - 1] = 0.5 * (wf[m] - alpha * wu[m]);
            }
        }
    }
    SplitCharWindows {
        plus: plus.map(StencilWindow),
        minus: minus.map(StencilWindow),
    }
}

/// Reconstructs the split characteristic fluxes and maps the interface flux
/// back to conserved components.
pub fn char_interface_flux(split: &SplitCharWindows, basis: &CharBasis1D, scheme: &SchemeConfig) -> [f64; 3] {
    let mut w = [0.0; 3];
    for m in 0..3 {
        w[m] = reconstruct(&split.plus[m], scheme) + reconstruct_mirrored(&split.minus[m], scheme);
    }
    basis.recombine(&w)
}

/// Default smoothing of the split eigenvalues.
pub const STEGER_WARMING_DELTA: f64 = 1e-6;

/// Steger–Warming flux vector splitting along `axis`.
///
/// Eigenvalues are split as `(lambda +- sqrt(lambda^2 + delta^2)) / 2`, so
/// `F+ + F-` reproduces `F` up to round-off.  The computation is carried out
/// in (normal, tangential) components, which makes the X and Y splits exact
/// mirror images of one another.
pub fn steger_warming_split(
    u: [f64; 4],
    gas: &GasModel,
    axis: Axis,
    delta: f64,
) -> Result<([f64; 4], [f64; 4])> {
    let w = cons_to_prim_2d(u, gas)?;
    let c = w.sound_speed(gas)?;
    let (un, ut) = match axis {
        Axis::X => (w.u, w.v),
        Axis::Y => (w.v, w.u),
    };
    let g = gas.gamma;
    let split = |lam: f64| {
        let r = (lam * lam + delta * delta).sqrt();
        (0.5 * (lam + r), 0.5 * (lam - r))
    };
    let (l1p, l1m) = split(un - c);
    let (l2p, l2m) = split(un);
    let (l3p, l3m) = split(un + c);
    let k = w.rho / (2.0 * g);
    let q2 = un * un + ut * ut;
    let ua = un - c;
    let ub = un + c;
    let enthalpy_term = (3.0 - g) * c * c / (2.0 * (g - 1.0));
    let assemble = |l1: f64, l2: f64, l3: f64| {
        let f0 = k * (2.0 * (g - 1.0) * l2 + l1 + l3);
        let fn_ = k * (2.0 * (g - 1.0) * l2 * un + l1 * ua + l3 * ub);
        let ft = k * (2.0 * (g - 1.0) * l2 + l1 + l3) * ut;
        let fe = k
            * ((g - 1.0) * l2 * q2
                + 0.5 * l1 * (ua * ua + ut * ut)
                + 0.5 * l3 * (ub * ub + ut * ut)
                + enthalpy_term * (l1 + l3));
        match axis {
            Axis::X => [f0, fn_, ft, fe],
            Axis::Y => [f0, ft, fn_, fe],
        }
    };
    Ok((assemble(l1p, l2p, l3p), assemble(l1m, l2m, l3m)))
}

/// One-dimensional Steger–Warming split, evaluated through the 2D formula
/// with zero transverse velocity so that both solvers agree bit for bit.
pub fn steger_warming_split_1d(u: [f64; 3], gas: &GasModel, delta: f64) -> Result<([f64; 3], [f64; 3])> {
    let (p, m) = steger_warming_split([u[0], u[1], 0.0, u[2]], gas, Axis::X, delta)?;
    Ok(([p[0], p[1], p[3]], [m[0], m[1], m[3]]))
}
