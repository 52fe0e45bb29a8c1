//! Five-point WENO reconstruction: smoothness indicators, global indicators,
//! the nonlinear weighting strategies and the assembled interface value.
//!
//! Everything here is a pure function of a [`StencilWindow`] holding the
//! samples `(f[i-2], f[i-1], f[i], f[i+1], f[i+2])`; the reconstruction
//! target is the upstream-biased interface `x[i+1/2]`.
//!
//! The functions are generic over [`num_traits::Float`] so the same algebra
//! can be evaluated in `f64` by the solvers and in quadruple precision by
//! the critical-point convergence study, whose errors sit far below `f64`
//! round-off.

use num_traits::Float;

/// Optimal (linear) weights of the fifth-order upstream scheme.
pub const OPTIMAL_WEIGHTS: [f64; 3] = [0.1, 0.6, 0.3];

/// Exact rational `num / den` evaluated in the working precision.
#[inline(always)]
fn ratio<T: Float>(num: f64, den: f64) -> T {
    T::from(num).unwrap() / T::from(den).unwrap()
}

#[inline(always)]
fn lit<T: Float>(v: f64) -> T {
    T::from(v).unwrap()
}

#[inline(always)]
fn optimal<T: Float>() -> [T; 3] {
    [ratio(1.0, 10.0), ratio(6.0, 10.0), ratio(3.0, 10.0)]
}

/// Five contiguous flux samples feeding one interface reconstruction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StencilWindow<T = f64>(pub [T; 5]);

impl<T: Float> StencilWindow<T> {
    pub fn new(v: [T; 5]) -> Self {
        Self(v)
    }

    /// The window read right-to-left, i.e. mirrored about its centre node.
    pub fn reversed(&self) -> Self {
        let v = self.0;
        Self([v[4], v[3], v[2], v[1], v[0]])
    }

    pub fn scaled(&self, s: T) -> Self {
        Self(self.0.map(|x| x * s))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }
}

impl<T> From<[T; 5]> for StencilWindow<T> {
    fn from(v: [T; 5]) -> Self {
        Self(v)
    }
}

/// Jiang–Shu local smoothness indicators of the three sub-stencils.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SmoothnessSet<T = f64> {
    pub is0: T,
    pub is1: T,
    pub is2: T,
}

impl<T: Float> SmoothnessSet<T> {
    pub fn as_array(&self) -> [T; 3] {
        [self.is0, self.is1, self.is2]
    }
}

/// Stencil-wide indicators used by the Z-type weights.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GlobalIndicators<T = f64> {
    pub tau5: T,
    pub tau8: T,
    /// The adaptive replacement for the constant 1 of WENO-Z.
    pub c_big: T,
}

/// Normalised nonlinear weights.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeightVector<T = f64>(pub [T; 3]);

impl<T: Float> WeightVector<T> {
    pub fn sum(&self) -> T {
        self.0[0] + self.0[1] + self.0[2]
    }

    fn normalize(alpha: [T; 3]) -> Self {
        let s = alpha[0] + alpha[1] + alpha[2];
        Self(alpha.map(|a| a / s))
    }
}

/// Third-order interface values on the sub-stencils S0, S1, S2.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CandidateFluxes<T = f64>(pub [T; 3]);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SchemeKind {
    /// Jiang–Shu.
    Js,
    /// Borges et al. WENO-Z with `tau5`.
    Z,
    /// Liu et al. WENO-ZA.
    Za,
    /// WENO-ZN: `tau8` global indicator with the adaptive function `C`.
    Zn,
    /// Wang et al. WENO-D.
    D,
    /// Wang et al. WENO-A.
    A,
}

impl SchemeKind {
    pub const ALL: [SchemeKind; 6] = [
        SchemeKind::Js,
        SchemeKind::Z,
        SchemeKind::Za,
        SchemeKind::Zn,
        SchemeKind::D,
        SchemeKind::A,
    ];

    /// Stable command-line identifier.
    pub fn id(self) -> &'static str {
        match self {
            SchemeKind::Js => "js",
            SchemeKind::Z => "z",
            SchemeKind::Za => "za",
            SchemeKind::Zn => "zn",
            SchemeKind::D => "d",
            SchemeKind::A => "a",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.id() == id)
    }

    pub fn label(self) -> &'static str {
        match self {
            SchemeKind::Js => "WENO-JS",
            SchemeKind::Z => "WENO-Z",
            SchemeKind::Za => "WENO-ZA",
            SchemeKind::Zn => "WENO-ZN",
            SchemeKind::D => "WENO-D",
            SchemeKind::A => "WENO-A",
        }
    }
}

impl std::fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.id())
    }
}

impl std::str::FromStr for SchemeKind {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::from_id(&s.to_ascii_lowercase())
            .ok_or_else(|| crate::Error::InvalidConfig(format!("unknown scheme `{s}`")))
    }
}

/// Scheme kind plus its free parameters.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SchemeConfig {
    pub kind: SchemeKind,
    /// Zero-guard in the indicator denominators.
    pub epsilon: f64,
    /// Power on the nonlinear term (Z, D, A).
    pub q_power: u32,
    /// Scale constant of the adaptive function `C` (ZN).
    pub a_const: f64,
    /// Coefficients of the ZA global indicator.
    pub gamma1: f64,
    pub gamma2: f64,
}

impl SchemeConfig {
    /// Default parameters: `epsilon = 1e-6` for JS and `1e-40` for the
    /// Z-type schemes, `q = 1`, `A = 10`, `gamma1 = gamma2 = 1`.
    pub fn new(kind: SchemeKind) -> Self {
        Self {
            kind,
            epsilon: if kind == SchemeKind::Js { 1e-6 } else { 1e-40 },
            q_power: 1,
            a_const: 10.0,
            gamma1: 1.0,
            gamma2: 1.0,
        }
    }

    pub fn js() -> Self {
        Self::new(SchemeKind::Js)
    }
    pub fn z() -> Self {
        Self::new(SchemeKind::Z)
    }
    pub fn za() -> Self {
        Self::new(SchemeKind::Za)
    }
    pub fn zn() -> Self {
        Self::new(SchemeKind::Zn)
    }
    pub fn d(q_power: u32) -> Self {
        Self::new(SchemeKind::D).with_q(q_power)
    }
    pub fn a(q_power: u32) -> Self {
        Self::new(SchemeKind::A).with_q(q_power)
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn with_q(mut self, q_power: u32) -> Self {
        self.q_power = q_power;
        self
    }

    pub fn with_a_const(mut self, a_const: f64) -> Self {
        self.a_const = a_const;
        self
    }

    pub fn with_gammas(mut self, gamma1: f64, gamma2: f64) -> Self {
        self.gamma1 = gamma1;
        self.gamma2 = gamma2;
        self
    }

    pub fn validate(&self) -> crate::Result<()> {
        let bad = |what: &str| Err(crate::Error::InvalidConfig(what.to_string()));
        if !(self.epsilon > 0.0) {
            return bad("epsilon must be positive");
        }
        if self.q_power < 1 {
            return bad("q must be at least 1");
        }
        if !(self.a_const > 0.0) {
            return bad("A must be positive");
        }
        if !(self.gamma1 > 0.0 && self.gamma2 > 0.0) {
            return bad("gamma coefficients must be positive");
        }
        Ok(())
    }
}

impl Default for SchemeConfig {
    fn default() -> Self {
        Self::zn()
    }
}

pub fn local_smoothness<T: Float>(w: &StencilWindow<T>) -> SmoothnessSet<T> {
    // Written in first differences so constant data gives exact zeros.
    let [d0, d1, d2, d3] = differences(w);
    let three = lit::<T>(3.0);
    let k13: T = ratio(13.0, 12.0);
    let quarter: T = ratio(1.0, 4.0);
    let sq = |x: T| x * x;
    SmoothnessSet {
        is0: k13 * sq(d0 - d1) + quarter * sq(d0 - three * d1),
        is1: k13 * sq(d1 - d2) + quarter * sq(d1 + d2),
        is2: k13 * sq(d2 - d3) + quarter * sq(three * d2 - d3),
    }
}

fn differences<T: Float>(w: &StencilWindow<T>) -> [T; 4] {
    let [a, b, c, d, e] = w.0;
    [a - b, b - c, c - d, d - e]
}

/// `|IS0 - IS2|`.
pub fn tau5<T: Float>(s: &SmoothnessSet<T>) -> T {
    (s.is0 - s.is2).abs()
}

/// Squared undivided fourth difference over the whole window.
pub fn tau8<T: Float>(w: &StencilWindow<T>) -> T {
    let [d0, d1, d2, d3] = differences(w);
    let d4 = d0 - d3 - lit::<T>(3.0) * (d1 - d2);
    d4 * d4
}

/// `C = A ((IS0 + IS2 - tau + eps) / (tau + eps))^2`.
///
/// Large (`O(dx^-6)` away from critical points) on smooth stencils and
/// vanishing like `eps^2` when one edge sub-stencil is flat and the other
/// straddles a jump.
pub fn c_function<T: Float>(s: &SmoothnessSet<T>, tau: T, cfg: &SchemeConfig) -> T {
    let eps = lit::<T>(cfg.epsilon);
    let r = (s.is0 + s.is2 - tau + eps) / (tau + eps);
    lit::<T>(cfg.a_const) * r * r
}

pub fn global_indicators<T: Float>(w: &StencilWindow<T>, cfg: &SchemeConfig) -> GlobalIndicators<T> {
    let s = local_smoothness(w);
    let t5 = tau5(&s);
    GlobalIndicators {
        tau5: t5,
        tau8: tau8(w),
        c_big: c_function(&s, t5, cfg),
    }
}

/// Global indicator of WENO-ZA, built from one-sided undivided first and
/// second derivative approximations at `x[i]` on S0 and S2.
pub fn za_gsi<T: Float>(w: &StencilWindow<T>, cfg: &SchemeConfig) -> T {
    let [a, b, c, d, e] = w.0;
    let two = lit::<T>(2.0);
    let three = lit::<T>(3.0);
    let four = lit::<T>(4.0);
    let d1_left = (a - four * b + three * c) / two;
    let d1_right = (-three * c + four * d - e) / two;
    let d2_left = a - two * b + c;
    let d2_right = c - two * d + e;
    let g1 = d1_left.abs() - d1_right.abs();
    let g2 = d2_left.abs() - d2_right.abs();
    lit::<T>(cfg.gamma1) * g1 * g1 + lit::<T>(cfg.gamma2) * g2 * g2
}

/// Un-normalised weights for the configured scheme.
pub fn raw_weights<T: Float>(w: &StencilWindow<T>, cfg: &SchemeConfig) -> [T; 3] {
    let s = local_smoothness(w);
    let is = s.as_array();
    let c = optimal::<T>();
    let eps = lit::<T>(cfg.epsilon);
    let one = T::one();
    match cfg.kind {
        SchemeKind::Js => {
            let f = |k: usize| {
                let d = is[k] + eps;
                c[k] / (d * d)
            };
            [f(0), f(1), f(2)]
        }
        SchemeKind::Z => {
            let t = tau5(&s);
            let q = cfg.q_power as i32;
            let f = |k: usize| c[k] * (one + (t / (is[k] + eps)).powi(q));
            [f(0), f(1), f(2)]
        }
        SchemeKind::Za => {
            let t = za_gsi(w, cfg);
            let amp = t / (s.is0 + s.is2 - t + eps);
            let f = |k: usize| c[k] * (one + amp * t / (is[k] + eps));
            [f(0), f(1), f(2)]
        }
        SchemeKind::Zn => {
            let t5 = tau5(&s);
            let t8 = tau8(w);
            let big = c_function(&s, t5, cfg);
            let f = |k: usize| c[k] * (big + t8 / (is[k] + eps));
            [f(0), f(1), f(2)]
        }
        SchemeKind::D | SchemeKind::A => {
            let t = tau5(&s);
            let q = cfg.q_power as i32;
            let phi = (s.is0 - lit::<T>(2.0) * s.is1 + s.is2).abs().sqrt().min(one);
            let f = |k: usize| {
                let nl = phi * (t / (is[k] + eps)).powi(q);
                if cfg.kind == SchemeKind::D {
                    c[k] * (one + nl)
                } else {
                    c[k] * one.max(nl)
                }
            };
            [f(0), f(1), f(2)]
        }
    }
}

pub fn weights<T: Float>(w: &StencilWindow<T>, cfg: &SchemeConfig) -> WeightVector<T> {
    WeightVector::normalize(raw_weights(w, cfg))
}

pub fn candidate_fluxes<T: Float>(w: &StencilWindow<T>) -> CandidateFluxes<T> {
    let [a, b, c, d, e] = w.0;
    let third: T = ratio(1.0, 3.0);
    let sixth: T = ratio(1.0, 6.0);
    CandidateFluxes([
        third * a - ratio::<T>(7.0, 6.0) * b + ratio::<T>(11.0, 6.0) * c,
        -sixth * b + ratio::<T>(5.0, 6.0) * c + third * d,
        third * c + ratio::<T>(5.0, 6.0) * d - sixth * e,
    ])
}

/// Interface value at `x[i+1/2]` from the upwind-biased window.
pub fn reconstruct<T: Float>(w: &StencilWindow<T>, cfg: &SchemeConfig) -> T {
    let om = weights(w, cfg).0;
    let q = candidate_fluxes(w).0;
    om[0] * q[0] + om[1] * q[1] + om[2] * q[2]
}

/// The linear fifth-order upstream value, i.e. [`reconstruct`] with the
/// optimal weights.
pub fn reconstruct_linear<T: Float>(w: &StencilWindow<T>) -> T {
    let c = optimal::<T>();
    let q = candidate_fluxes(w).0;
    c[0] * q[0] + c[1] * q[1] + c[2] * q[2]
}

/// Interface value for the negative flux part.
///
/// `w` holds `(f[i-1], f[i], f[i+1], f[i+2], f[i+3])`; the reconstruction is
/// the mirror image of [`reconstruct`] about `x[i+1/2]`.
pub fn reconstruct_mirrored<T: Float>(w: &StencilWindow<T>, cfg: &SchemeConfig) -> T {
    reconstruct(&w.reversed(), cfg)
}

/// Relative contribution of the two edge sub-stencils.
///
/// For `IS0 >= IS2` returns `(K + g/IS0) / (K + g/IS2)`; otherwise the
/// reciprocal form with a negative sign.  `K = 1, g = tau5` for WENO-Z and
/// `K = C, g = tau8` for WENO-ZN.  Any other scheme kind is evaluated with
/// the WENO-Z form.
pub fn contribution_ratio<T: Float>(w: &StencilWindow<T>, cfg: &SchemeConfig) -> T {
    let s = local_smoothness(w);
    let eps = lit::<T>(cfg.epsilon);
    let t5 = tau5(&s);
    let (base, g) = match cfg.kind {
        SchemeKind::Zn => (c_function(&s, t5, cfg), tau8(w)),
        _ => (T::one(), t5),
    };
    let term = |is: T| base + g / (is + eps);
    if s.is0 >= s.is2 {
        term(s.is0) / term(s.is2)
    } else {
        -(term(s.is2) / term(s.is0))
    }
}
