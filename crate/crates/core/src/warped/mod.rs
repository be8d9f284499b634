//! Metrics on `T × [a, b]` compared against a warped reference.
//!
//! The reference metric is `ḡ = (c·h(x3))² (dx1² + dx2²) + dx3²`, where `c` is a
//! constant horizontal scale. It relates the coordinate lattice to an
//! orthonormal frame of the reference flat torus; it is `1` for cusps and
//! `sinh R` for tube ends written in `(θ, z)` coordinates. The actual metric
//! is `g = a_kl dx_k dx_l`, either diagonal `diag(a1², a2², 1)` with
//! coefficients depending on `x3` only, or a general field.

mod hypotheses;

use std::fmt::Debug;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use hypotheses::{check_hypotheses, exponent_count, HypothesisReport};

use crate::error::{domain, Error, Result};
use crate::lattice::FlatTorusLattice;
use crate::profile::{Constant, CubicSpline, Exponential, Reparametrized, SharedProfile};

pub type Sym3 = [[f64; 3]; 3];

/// Value and partial derivatives (through third order) of `a_kl`.
///
/// `d1[i][k][l] = ∂_i a_kl`, `d2[i][j][k][l] = ∂_i ∂_j a_kl`, and so on;
/// derivative indices are 0-based coordinate axes.
#[derive(Debug, Clone, Default)]
pub struct CoefficientJet {
    pub value: Sym3,
    pub d1: [Sym3; 3],
    pub d2: [[Sym3; 3]; 3],
    pub d3: [[[Sym3; 3]; 3]; 3],
}

/// A general symmetric coefficient field `a_kl(x1, x2, x3)`.
///
/// Only `eval` is required; the default jet uses central differences, which
/// is adequate for the empirical hypothesis constants. Fields with closed
/// forms should override it.
pub trait CoefficientField: Debug + Send + Sync {
    fn eval(&self, x: [f64; 3]) -> Sym3;

    fn jet(&self, x: [f64; 3]) -> CoefficientJet {
        finite_difference_jet(|p| self.eval(p), x)
    }
}

fn finite_difference_jet(f: impl Fn([f64; 3]) -> Sym3, x: [f64; 3]) -> CoefficientJet {
    let scale = 1f64.max(x.iter().fold(0.0f64, |m, v| m.max(v.abs())));
    // Central difference of an arbitrary function along axis i.
    fn central(g: &dyn Fn([f64; 3]) -> Sym3, x: [f64; 3], i: usize, h: f64) -> Sym3 {
        let mut p = x;
        let mut m = x;
        p[i] += h;
        m[i] -= h;
        let (a, b) = (g(p), g(m));
        let mut out = [[0.0; 3]; 3];
        for k in 0..3 {
            for l in 0..3 {
                out[k][l] = (a[k][l] - b[k][l]) / (2.0 * h);
            }
        }
        out
    }
    let h1 = 1e-5 * scale;
    let h2 = 1e-4 * scale;
    let h3 = 2e-3 * scale;
    let mut jet = CoefficientJet {
        value: f(x),
        ..Default::default()
    };
    for i in 0..3 {
        jet.d1[i] = central(&f, x, i, h1);
        for j in 0..3 {
            let di = |p: [f64; 3]| central(&f, p, i, h2);
            jet.d2[i][j] = central(&di, x, j, h2);
            for m in 0..3 {
                let dij = |p: [f64; 3]| {
                    let di = |q: [f64; 3]| central(&f, q, i, h3);
                    central(&di, p, j, h3)
                };
                jet.d3[i][j][m] = central(&dij, x, m, h3);
            }
        }
    }
    jet
}

/// The metric coefficients.
#[derive(Debug, Clone)]
pub enum Coefficients {
    /// `diag(a1(x3)², a2(x3)², 1)`.
    Diagonal {
        a1: SharedProfile,
        a2: SharedProfile,
    },
    General(Arc<dyn CoefficientField>),
}

/// A metric on `T × [a, b]` together with its warped reference.
#[derive(Debug, Clone)]
pub struct WarpedMetricSpec {
    lattice: FlatTorusLattice,
    interval: (f64, f64),
    warping: SharedProfile,
    reference_scale: f64,
    coefficients: Coefficients,
}

impl WarpedMetricSpec {
    pub fn new(
        lattice: FlatTorusLattice,
        interval: (f64, f64),
        warping: SharedProfile,
        reference_scale: f64,
        coefficients: Coefficients,
    ) -> Result<Self> {
        let (a, b) = interval;
        if !(a.is_finite() && b.is_finite() && a < b) {
            return domain(format!("interval [{a}, {b}] must be finite and nonempty"));
        }
        if !(reference_scale > 0.0) {
            return domain("reference scale must be positive");
        }
        let spec = WarpedMetricSpec {
            lattice,
            interval,
            warping,
            reference_scale,
            coefficients,
        };
        for t in [a, 0.5 * (a + b), b] {
            if !(spec.warping.value(t) > 0.0) {
                return domain(format!("warping must be positive on the interval (h({t}) <= 0)"));
            }
        }
        Ok(spec)
    }

    /// Diagonal metric `diag(a1², a2², 1)` with reference warping `h` and
    /// reference scale `c`.
    pub fn diagonal(
        lattice: FlatTorusLattice,
        interval: (f64, f64),
        a1: SharedProfile,
        a2: SharedProfile,
        h: SharedProfile,
        reference_scale: f64,
    ) -> Result<Self> {
        Self::new(lattice, interval, h, reference_scale, Coefficients::Diagonal { a1, a2 })
    }

    /// Euclidean metric on `T × [a, b]`.
    pub fn flat(lattice: FlatTorusLattice, interval: (f64, f64)) -> Result<Self> {
        let one: SharedProfile = Arc::new(Constant(1.0));
        Self::diagonal(lattice, interval, one.clone(), one.clone(), one, 1.0)
    }

    /// `e^{-2t} dσ² + dt²`, which is its own reference.
    pub fn cusp(lattice: FlatTorusLattice, interval: (f64, f64)) -> Result<Self> {
        let e: SharedProfile = Arc::new(Exponential { scale: 1.0, rate: -1.0 });
        Self::diagonal(lattice, interval, e.clone(), e.clone(), e, 1.0)
    }

    pub fn lattice(&self) -> &FlatTorusLattice {
        &self.lattice
    }

    pub fn interval(&self) -> (f64, f64) {
        self.interval
    }

    pub fn warping(&self) -> &SharedProfile {
        &self.warping
    }

    pub fn reference_scale(&self) -> f64 {
        self.reference_scale
    }

    pub fn coefficients(&self) -> &Coefficients {
        &self.coefficients
    }

    pub fn is_diagonal(&self) -> bool {
        matches!(self.coefficients, Coefficients::Diagonal { .. })
    }

    /// `(a1, a2)` for diagonal specs.
    pub fn diagonal_profiles(&self) -> Result<(&SharedProfile, &SharedProfile)> {
        match &self.coefficients {
            Coefficients::Diagonal { a1, a2 } => Ok((a1, a2)),
            Coefficients::General(_) => Err(Error::Unsupported(
                "operation requires a diagonal metric diag(a1², a2², 1)".into(),
            )),
        }
    }

    pub fn contains(&self, x3: f64) -> bool {
        x3 >= self.interval.0 && x3 <= self.interval.1
    }

    /// `a_kl` at a point.
    pub fn coefficients_at(&self, x: [f64; 3]) -> Sym3 {
        match &self.coefficients {
            Coefficients::Diagonal { a1, a2 } => {
                let (p, q) = (a1.value(x[2]), a2.value(x[2]));
                [[p * p, 0.0, 0.0], [0.0, q * q, 0.0], [0.0, 0.0, 1.0]]
            }
            Coefficients::General(f) => f.eval(x),
        }
    }

    /// Diagonal of `a_kl`; convenience for closed-form checks.
    pub fn diagonal_at(&self, x: [f64; 3]) -> [f64; 3] {
        let a = self.coefficients_at(x);
        [a[0][0], a[1][1], a[2][2]]
    }

    pub fn coefficient_jet(&self, x: [f64; 3]) -> CoefficientJet {
        match &self.coefficients {
            Coefficients::Diagonal { a1, a2 } => {
                let mut jet = CoefficientJet::default();
                let sq = |p: [f64; 4]| {
                    [
                        p[0] * p[0],
                        2.0 * p[0] * p[1],
                        2.0 * (p[1] * p[1] + p[0] * p[2]),
                        2.0 * (3.0 * p[1] * p[2] + p[0] * p[3]),
                    ]
                };
                let s1 = sq(a1.jet(x[2]));
                let s2 = sq(a2.jet(x[2]));
                jet.value[0][0] = s1[0];
                jet.value[1][1] = s2[0];
                jet.value[2][2] = 1.0;
                jet.d1[2][0][0] = s1[1];
                jet.d1[2][1][1] = s2[1];
                jet.d2[2][2][0][0] = s1[2];
                jet.d2[2][2][1][1] = s2[2];
                jet.d3[2][2][2][0][0] = s1[3];
                jet.d3[2][2][2][1][1] = s2[3];
                jet
            }
            Coefficients::General(f) => f.jet(x),
        }
    }

    /// `c · h(x3)`, the reference horizontal length scale in coordinate units.
    pub fn reference_length(&self, x3: f64) -> f64 {
        self.reference_scale * self.warping.value(x3)
    }

    /// Horizontal rescaling `(x1, x2) ↦ (μ x1, μ x2)`: coefficients with `n`
    /// horizontal indices pick up `μ^{-n}` and the lattice scales by `μ`.
    pub fn scale_horizontal(&self, mu: f64) -> Result<Self> {
        if !(mu > 0.0) {
            return domain("horizontal scale must be positive");
        }
        let coefficients = match &self.coefficients {
            Coefficients::Diagonal { a1, a2 } => Coefficients::Diagonal {
                a1: scaled_profile(a1.clone(), 1.0 / mu),
                a2: scaled_profile(a2.clone(), 1.0 / mu),
            },
            Coefficients::General(f) => Coefficients::General(Arc::new(HorizontalScaling { inner: f.clone(), mu })),
        };
        Self::new(
            self.lattice.scaled(mu)?,
            self.interval,
            self.warping.clone(),
            self.reference_scale / mu,
            coefficients,
        )
    }
}

fn scaled_profile(p: SharedProfile, factor: f64) -> SharedProfile {
    Arc::new(Reparametrized {
        inner: p,
        lambda: 1.0,
        shift: 0.0,
        factor,
    })
}

#[derive(Debug)]
struct HorizontalScaling {
    inner: Arc<dyn CoefficientField>,
    mu: f64,
}

impl CoefficientField for HorizontalScaling {
    fn eval(&self, y: [f64; 3]) -> Sym3 {
        let a = self.inner.eval([y[0] / self.mu, y[1] / self.mu, y[2]]);
        let mut b = a;
        for k in 0..3 {
            for l in 0..3 {
                b[k][l] = a[k][l] * self.mu.powi(-(exponent_count(&[k + 1, l + 1]) as i32));
            }
        }
        b
    }
}

/// Blow-up used in the maximum-principle argument: coordinates
/// `y = (x1, x2, λ(x3 − s))` and metric `λ² g`, so that
/// `b_kl(y) = a_kl(y1, y2, y3/λ + s) · λ^{n2(k,l)}`.
///
/// The reference warping becomes `h(y3/λ + s) / h(s)` with reference scale
/// `λ c h(s)`; the product `c h` transforms exactly like the horizontal
/// coefficients, which keeps the H1 ratio invariant.
pub fn blowup_rescale(spec: &WarpedMetricSpec, s: f64, lambda: f64) -> Result<WarpedMetricSpec> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return domain(format!("blow-up factor {lambda} must be positive"));
    }
    if !spec.contains(s) {
        let (a, b) = spec.interval;
        return domain(format!("blow-up level {s} outside [{a}, {b}]"));
    }
    let (a, b) = spec.interval;
    let (lo, hi) = (lambda * (a - s), lambda * (b - s));
    if !(hi > lo) {
        return domain("transformed interval is empty");
    }
    let hs = spec.warping.value(s);
    let warping: SharedProfile = Arc::new(Reparametrized {
        inner: spec.warping.clone(),
        lambda,
        shift: s,
        factor: 1.0 / hs,
    });
    let coefficients = match &spec.coefficients {
        Coefficients::Diagonal { a1, a2 } => {
            let re = |p: &SharedProfile| -> SharedProfile {
                Arc::new(Reparametrized {
                    inner: p.clone(),
                    lambda,
                    shift: s,
                    factor: lambda,
                })
            };
            Coefficients::Diagonal { a1: re(a1), a2: re(a2) }
        }
        Coefficients::General(f) => Coefficients::General(Arc::new(BlownUp {
            inner: f.clone(),
            s,
            lambda,
        })),
    };
    WarpedMetricSpec::new(
        spec.lattice,
        (lo, hi),
        warping,
        lambda * spec.reference_scale * hs,
        coefficients,
    )
}

/// Blow-up at level `s` with the canonical factor `λ = 1 / (c h(s))`, which
/// normalizes the reference torus at `y3 = 0` to unit scale.
pub fn blowup_at(spec: &WarpedMetricSpec, s: f64) -> Result<WarpedMetricSpec> {
    let h = spec.reference_length(s);
    blowup_rescale(spec, s, 1.0 / h)
}

#[derive(Debug)]
struct BlownUp {
    inner: Arc<dyn CoefficientField>,
    s: f64,
    lambda: f64,
}

impl BlownUp {
    fn factor(&self, k: usize, l: usize) -> f64 {
        self.lambda.powi(exponent_count(&[k + 1, l + 1]) as i32)
    }
}

impl CoefficientField for BlownUp {
    fn eval(&self, y: [f64; 3]) -> Sym3 {
        let a = self.inner.eval([y[0], y[1], y[2] / self.lambda + self.s]);
        let mut b = a;
        for k in 0..3 {
            for l in 0..3 {
                b[k][l] = a[k][l] * self.factor(k, l);
            }
        }
        b
    }

    fn jet(&self, y: [f64; 3]) -> CoefficientJet {
        let j = self.inner.jet([y[0], y[1], y[2] / self.lambda + self.s]);
        let d = |i: usize| if i == 2 { 1.0 / self.lambda } else { 1.0 };
        let mut out = CoefficientJet::default();
        for k in 0..3 {
            for l in 0..3 {
                let f = self.factor(k, l);
                out.value[k][l] = f * j.value[k][l];
                for i in 0..3 {
                    out.d1[i][k][l] = f * d(i) * j.d1[i][k][l];
                    for jj in 0..3 {
                        out.d2[i][jj][k][l] = f * d(i) * d(jj) * j.d2[i][jj][k][l];
                        for m in 0..3 {
                            out.d3[i][jj][m][k][l] = f * d(i) * d(jj) * d(m) * j.d3[i][jj][m][k][l];
                        }
                    }
                }
            }
        }
        out
    }
}

/// Mean curvature of the level torus `T_s` for a diagonal metric,
/// `−½ (a1'/a1 + a2'/a2)(s)`.
///
/// Positive values mean the mean curvature vector points toward `+∂_{x3}`,
/// the side where the level tori shrink. For the cusp this is `1`; for the
/// tube in depth coordinates it is `(tanh r + coth r)/2` at `r = R − s`.
pub fn level_torus_mean_curvature(spec: &WarpedMetricSpec, s: f64) -> Result<f64> {
    let (a1, a2) = spec.diagonal_profiles()?;
    let j1 = a1.jet(s);
    let j2 = a2.jet(s);
    Ok(-0.5 * (j1[1] / j1[0] + j2[1] / j2[0]))
}

/// Same sign convention as [`level_torus_mean_curvature`], for arbitrary
/// coefficient fields: `−½ div_g ν` with `ν = ∇x3 / |∇x3|`.
pub(crate) fn level_mean_curvature_general(jet: &CoefficientJet) -> Option<f64> {
    let g = nalgebra::Matrix3::from_fn(|i, j| jet.value[i][j]);
    let inv = g.try_inverse()?;
    let dg = |i: usize| nalgebra::Matrix3::from_fn(|k, l| jet.d1[i][k][l]);
    let g33 = inv[(2, 2)];
    if !(g33 > 0.0) {
        return None;
    }
    let norm = g33.sqrt();
    let mut div = 0.0;
    for i in 0..3 {
        let dinv = -(inv * dg(i) * inv);
        let d_log_sqrt_det = 0.5 * (inv * dg(i)).trace();
        let nu_i = inv[(i, 2)] / norm;
        let dnu_i = dinv[(i, 2)] / norm - 0.5 * inv[(i, 2)] * dinv[(2, 2)] / (g33 * norm);
        div += dnu_i + nu_i * d_log_sqrt_det;
    }
    Some(-0.5 * div)
}

fn default_tube_interval(radius: f64) -> (f64, f64) {
    (0.0, radius - 0.5)
}

/// JSON description of a metric, tagged by `kind`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MetricDescriptor {
    Flat {
        lattice: FlatTorusLattice,
        interval: (f64, f64),
    },
    Cusp {
        lattice: FlatTorusLattice,
        interval: (f64, f64),
    },
    /// Tube end of radius `radius` around a geodesic of the given length and
    /// twist. `orientation = "depth"` uses `t = R − r` (default interval
    /// `[0, R − 1/2]`); `"radial"` uses `r` itself.
    Tube {
        length: f64,
        #[serde(default)]
        twist: f64,
        radius: f64,
        #[serde(default)]
        orientation: TubeOrientation,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        interval: Option<(f64, f64)>,
    },
    /// Diagonal metric from uniformly spaced samples of `a1`, `a2` and `h`
    /// (natural cubic splines).
    Custom {
        lattice: FlatTorusLattice,
        interval: (f64, f64),
        #[serde(default = "one")]
        reference_scale: f64,
        x3_start: f64,
        x3_step: f64,
        a1: Vec<f64>,
        a2: Vec<f64>,
        h: Vec<f64>,
    },
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TubeOrientation {
    #[default]
    Depth,
    Radial,
}

impl MetricDescriptor {
    pub fn build(&self) -> Result<WarpedMetricSpec> {
        match self {
            MetricDescriptor::Flat { lattice, interval } => WarpedMetricSpec::flat(*lattice, *interval),
            MetricDescriptor::Cusp { lattice, interval } => WarpedMetricSpec::cusp(*lattice, *interval),
            MetricDescriptor::Tube {
                length,
                twist,
                radius,
                orientation,
                interval,
            } => {
                let p = crate::tube::TubeParams::new(*length, *twist, *radius)?;
                match orientation {
                    TubeOrientation::Depth => {
                        let spec = crate::tube::tube_as_warped(&p)?;
                        match interval {
                            Some(iv) => spec.with_interval(*iv),
                            None => spec.with_interval(default_tube_interval(*radius)),
                        }
                    }
                    TubeOrientation::Radial => crate::tube::tube_radial(&p, interval.unwrap_or((0.5, *radius))),
                }
            }
            MetricDescriptor::Custom {
                lattice,
                interval,
                reference_scale,
                x3_start,
                x3_step,
                a1,
                a2,
                h,
            } => {
                let spline = |v: &Vec<f64>| -> Result<SharedProfile> {
                    Ok(Arc::new(CubicSpline::new(*x3_start, *x3_step, v.clone())?))
                };
                for (name, v) in [("a1", a1), ("a2", a2), ("h", h)] {
                    if v.iter().any(|x| !(*x > 0.0)) {
                        return domain(format!("custom profile {name} must be positive"));
                    }
                }
                WarpedMetricSpec::diagonal(
                    *lattice,
                    *interval,
                    spline(a1)?,
                    spline(a2)?,
                    spline(h)?,
                    *reference_scale,
                )
            }
        }
    }
}

impl WarpedMetricSpec {
    /// Same metric on a different interval.
    pub fn with_interval(&self, interval: (f64, f64)) -> Result<Self> {
        Self::new(
            self.lattice,
            interval,
            self.warping.clone(),
            self.reference_scale,
            self.coefficients.clone(),
        )
    }
}
