//! The solid-torus filler attached to a cusp boundary.
//!
//! On `T × [0, L+1]` the metric is `e^{-2f(t)} dσ² + dt²` for `t < L` and
//! `e^{-2f(t)} (η²(t−L) dx1² + dx2²) + dt²` on `[L, L+1)`, in a well-oriented
//! orthonormal frame where `T = R² / ⟨(α, 0), (β, ℓ)⟩`. Since `η(1) = 0` the
//! circles in the `x1` direction collapse at `t = L + 1` and the result is a
//! smooth solid torus.
//!
//! The profiles used here:
//!
//! * `f(t) = t` on `[0, 1]`, then `f = 1 + 2φ(G/2)`, `φ(y) = 1 − 1/(1 + y + y²)`, where `G` grows with
//!   unit slope until `L − 1/3` and is flattened by a quintic over one unit,
//!   so `f' = 0` on `[L + 2/3, L + 1]` and `f < 3`.
//! * `η(x) = 1 − β(x)(1 − ψ(k(1 − x)))` with `k = (2π/α) e^{f(L+1)}`, a
//!   smoothstep `β` from `0.1` to `0.3`, and `ψ(y) = y` for `y ≤ 1/2`
//!   saturating below 1 afterwards. Hence `η = 1` on `[0, 0.1]` and
//!   `η(x) = k(1 − x)` near 1.

use std::f64::consts::PI;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::lattice::{diameter, systole, FlatTorusLattice};
use crate::profile::{Jet, Product, Profile, SharedProfile};
use crate::warped::{level_torus_mean_curvature, WarpedMetricSpec};

/// Monotonicity constant used when none is given: the area of a unit
/// Euclidean disk.
pub const DEFAULT_MONOTONICITY_CONSTANT: f64 = PI;

const ETA_BLEND: (f64, f64) = (0.1, 0.3);

/// Jet of `1 / (c0 + c1 y + c2 y²)` at `y`.
fn reciprocal_quadratic(c: [f64; 3], y: f64) -> Jet {
    let e = c[0] + c[1] * y + c[2] * y * y;
    let d1 = c[1] + 2.0 * c[2] * y;
    let d2 = 2.0 * c[2];
    [
        1.0 / e,
        -d1 / (e * e),
        (2.0 * d1 * d1 - d2 * e) / e.powi(3),
        6.0 * d1 * (d2 * e - d1 * d1) / e.powi(4),
    ]
}

/// Saturation `1 − 1/(1 + y + y²)`: zero at 0 with unit slope and zero
/// curvature, increasing to 1 with algebraic decay so that the increments
/// stay visible in floating point far out.
fn saturate(y: f64) -> Jet {
    let r = reciprocal_quadratic([1.0, 1.0, 1.0], y);
    [1.0 - r[0], -r[1], -r[2], -r[3]]
}

/// Jet of `g(y(x))` from jets of `g` (in `y`) and of `y` (in `x`).
fn compose(g: Jet, y: Jet) -> Jet {
    [
        g[0],
        g[1] * y[1],
        g[2] * y[1] * y[1] + g[1] * y[2],
        g[3] * y[1].powi(3) + 3.0 * g[2] * y[1] * y[2] + g[1] * y[3],
    ]
}

/// Quintic smoothstep `6z⁵ − 15z⁴ + 10z³` clamped to `[0, 1]`.
fn smoothstep(z: f64) -> Jet {
    if z <= 0.0 {
        return [0.0; 4];
    }
    if z >= 1.0 {
        return [1.0, 0.0, 0.0, 0.0];
    }
    let z2 = z * z;
    [
        z2 * z * (10.0 - 15.0 * z + 6.0 * z2),
        30.0 * z2 * (1.0 - z).powi(2),
        60.0 * z * (1.0 - z) * (1.0 - 2.0 * z),
        60.0 - 360.0 * z + 360.0 * z2,
    ]
}

/// The depth profile `f` on `[0, L + 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DepthProfile {
    pub l: f64,
}

impl DepthProfile {
    fn plateau_start(&self) -> f64 {
        self.l - 1.0 / 3.0
    }

    /// Jet of `G` for `t ≥ 1`.
    fn g_jet(&self, t: f64) -> Jet {
        let ta = self.plateau_start();
        if t <= ta {
            return [t - 1.0, 1.0, 0.0, 0.0];
        }
        let s = t - ta;
        if s >= 1.0 {
            return [ta - 0.5, 0.0, 0.0, 0.0];
        }
        // Q(s) = s − (s⁶ − 3s⁵ + 2.5s⁴): Q' = 1 − smoothstep(s), Q(1) = 1/2.
        let st = smoothstep(s);
        let q = s - s.powi(4) * (s * s - 3.0 * s + 2.5);
        [ta - 1.0 + q, 1.0 - st[0], -st[1], -st[2]]
    }
}

impl Profile for DepthProfile {
    fn jet(&self, t: f64) -> Jet {
        if t <= 1.0 {
            return [t, 1.0, 0.0, 0.0];
        }
        let g = self.g_jet(t);
        let y = [0.5 * g[0], 0.5 * g[1], 0.5 * g[2], 0.5 * g[3]];
        let c = compose(saturate(y[0]), y);
        [1.0 + 2.0 * c[0], 2.0 * c[1], 2.0 * c[2], 2.0 * c[3]]
    }
}

/// The collapsing profile `η` on `[0, 1]`, extended by `1` to the left.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollapseProfile {
    /// Slope of the linear tail, `(2π/α) e^{f(L+1)}`.
    pub k: f64,
}

impl CollapseProfile {
    fn psi(y: f64) -> Jet {
        if y <= 0.5 {
            return [y, 1.0, 0.0, 0.0];
        }
        // 1 − ψ = 1 / (2(1 + 2z + 4z²)), z = y − 1/2.
        let r = reciprocal_quadratic([1.0, 2.0, 4.0], y - 0.5);
        [1.0 - 0.5 * r[0], -0.5 * r[1], -0.5 * r[2], -0.5 * r[3]]
    }
}

impl Profile for CollapseProfile {
    fn jet(&self, x: f64) -> Jet {
        let (lo, hi) = ETA_BLEND;
        let w = hi - lo;
        let s = smoothstep((x - lo) / w);
        let b = [s[0], s[1] / w, s[2] / (w * w), s[3] / (w * w * w)];
        let p = Self::psi(self.k * (1.0 - x));
        let k = self.k;
        let phi = [p[0], -k * p[1], k * k * p[2], -k * k * k * p[3]];
        // η = 1 − β + β φ.
        [
            1.0 - b[0] + b[0] * phi[0],
            -b[1] + b[1] * phi[0] + b[0] * phi[1],
            -b[2] + b[2] * phi[0] + 2.0 * b[1] * phi[1] + b[0] * phi[2],
            -b[3] + b[3] * phi[0] + 3.0 * b[2] * phi[1] + 3.0 * b[1] * phi[2] + b[0] * phi[3],
        ]
    }
}

/// `η(t − L)` as a function of `t`, equal to 1 for `t < L`.
#[derive(Debug, Clone, Copy)]
struct ShiftedCollapse {
    eta: CollapseProfile,
    l: f64,
}

impl Profile for ShiftedCollapse {
    fn jet(&self, t: f64) -> Jet {
        if t <= self.l {
            [1.0, 0.0, 0.0, 0.0]
        } else {
            self.eta.jet(t - self.l)
        }
    }
}

/// `e^{-f(t)}`.
#[derive(Debug, Clone, Copy)]
struct Shrink(DepthProfile);

impl Profile for Shrink {
    fn jet(&self, t: f64) -> Jet {
        let f = self.0.jet(t);
        let e = (-f[0]).exp();
        [
            e,
            -f[1] * e,
            (f[1] * f[1] - f[2]) * e,
            (-f[3] + 3.0 * f[1] * f[2] - f[1].powi(3)) * e,
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FillerJson", into = "FillerJson")]
pub struct FillerSpec {
    l: f64,
    lattice: FlatTorusLattice,
}

/// On-disk form. The profiles are closed-form functions of `L` and the
/// lattice, so only those are stored; `profiles` names the recipe.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FillerJson {
    #[serde(rename = "L")]
    l: f64,
    lattice: FlatTorusLattice,
    profiles: String,
}

const PROFILE_RECIPE: &str = "rational-ramp/smoothstep-v1";

impl TryFrom<FillerJson> for FillerSpec {
    type Error = Error;

    fn try_from(j: FillerJson) -> Result<Self> {
        if j.profiles != PROFILE_RECIPE {
            return domain(format!("unknown filler profile recipe {:?}", j.profiles));
        }
        build(j.l, j.lattice)
    }
}

impl From<FillerSpec> for FillerJson {
    fn from(s: FillerSpec) -> Self {
        FillerJson {
            l: s.l,
            lattice: s.lattice,
            profiles: PROFILE_RECIPE.into(),
        }
    }
}

/// Builds the filler of depth `L > 10` over the flat torus `lattice`.
pub fn build(l: f64, lattice: FlatTorusLattice) -> Result<FillerSpec> {
    if !(l > 10.0) || !l.is_finite() {
        return domain(format!("filler depth L must exceed 10, got {l}"));
    }
    let spec = FillerSpec { l, lattice };
    // The linear tail of η must start after the blend region.
    if spec.eta().k < 1.0 / (2.0 * (1.0 - ETA_BLEND.1)) {
        return domain("first lattice generator too long for the collapsing profile");
    }
    Ok(spec)
}

impl FillerSpec {
    #[allow(non_snake_case)]
    pub fn L(&self) -> f64 {
        self.l
    }

    pub fn lattice(&self) -> &FlatTorusLattice {
        &self.lattice
    }

    pub fn f(&self) -> DepthProfile {
        DepthProfile { l: self.l }
    }

    pub fn eta(&self) -> CollapseProfile {
        let alpha = self.lattice.v1()[0];
        CollapseProfile {
            k: 2.0 * PI / alpha * self.f().value(self.l + 1.0).exp(),
        }
    }

    fn check_t(&self, t: f64) -> Result<()> {
        if !(t >= 0.0 && t < self.l + 1.0) {
            return domain(format!(
                "t = {t} outside [0, L+1); the core t = L+1 needs the polar chart"
            ));
        }
        Ok(())
    }

    /// Diagonal coefficients `(g11, g22, g33)` at `(x1, x2, t)`.
    pub fn metric_at(&self, point: [f64; 3]) -> Result<[f64; 3]> {
        let t = point[2];
        self.check_t(t)?;
        let e = (-2.0 * self.f().value(t)).exp();
        if t < self.l {
            Ok([e, e, 1.0])
        } else {
            let eta = self.eta().value(t - self.l);
            Ok([e * eta * eta, e, 1.0])
        }
    }

    /// Lattice of the flat torus `T_t`, `e^{-f} diag(η, 1) Λ`.
    pub fn level_lattice(&self, t: f64) -> Result<FlatTorusLattice> {
        self.check_t(t)?;
        let s = (-self.f().value(t)).exp();
        let eta = if t < self.l { 1.0 } else { self.eta().value(t - self.l) };
        self.lattice.stretched(s * eta, s)
    }

    /// The filler as a diagonal metric on `[0, upper]`, `upper < L + 1`,
    /// with reference warping `e^{-f}`.
    pub fn as_warped(&self, upper: f64) -> Result<WarpedMetricSpec> {
        self.check_t(upper)?;
        let shrink: SharedProfile = Arc::new(Shrink(self.f()));
        let eta: SharedProfile = Arc::new(ShiftedCollapse {
            eta: self.eta(),
            l: self.l,
        });
        let a1: SharedProfile = Arc::new(Product(shrink.clone(), eta));
        WarpedMetricSpec::diagonal(self.lattice, (0.0, upper), a1, shrink.clone(), shrink, 1.0)
    }

    /// Polar chart `(ρ, θ, z)` around the core, `t = L + 1 − ρ` and
    /// `x1 = αθ/2π`: returns `(g_θθ, g_zz, g_ρρ)`.
    pub fn core_chart_metric(&self, rho: f64) -> Result<[f64; 3]> {
        if !(rho > 0.0 && rho <= 1.0) {
            return domain(format!("core chart needs 0 < ρ ≤ 1, got {rho}"));
        }
        let alpha = self.lattice.v1()[0];
        let t = self.l + 1.0 - rho;
        let e = (-2.0 * self.f().value(t)).exp();
        let eta = self.eta().value(1.0 - rho);
        Ok([e * eta * eta * alpha * alpha / (4.0 * PI * PI), e, 1.0])
    }

    /// Largest `ρ` for which `η(1 − ρ)` is on its linear tail and `f` is
    /// constant.
    pub fn core_linear_radius(&self) -> f64 {
        (0.5 / self.eta().k).min(1.0 / 3.0)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CoreResidual {
    pub rho: f64,
    /// `|g_θθ − ρ²|`.
    pub theta: f64,
    /// `|g_zz − e^{-2f(L+1)}|`.
    pub z: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct FillerReport {
    #[serde(rename = "L")]
    pub l: f64,
    pub samples: usize,
    /// (i): coefficients do not depend on `(x1, x2)` at any sampled level.
    pub levels_flat: bool,
    /// (ii): `diameter(T_t)` strictly decreasing over the samples.
    pub diameter_decreasing: bool,
    pub diameters: Vec<(f64, f64)>,
    /// (ii): level-torus mean curvature positive toward `+∂_t`.
    pub mean_convex: bool,
    pub min_mean_curvature: f64,
    /// (iii): `max |g − e^{-2t}|` over samples in `[0, 1]`.
    pub collar_error: f64,
    /// `max |g(L) − lim_{t→L⁻} g|`.
    pub splice_jump: f64,
    pub core_residuals: Vec<CoreResidual>,
    /// `max |g_θθ − ρ²| / ρ²` over the core samples.
    pub core_theta_relative: f64,
    pub passed: bool,
    pub notes: Vec<String>,
}

/// Checks properties (i)–(iii) and the smoothness at the core on `samples`
/// levels in `[0, L + 1)`.
pub fn verify(spec: &FillerSpec, samples: usize) -> Result<FillerReport> {
    if samples < 2 {
        return domain("verification needs at least 2 samples");
    }
    let l = spec.l;
    let top = l + 1.0;
    let ts: Vec<f64> = (0..samples).map(|i| top * i as f64 / samples as f64).collect();
    let warped = spec.as_warped(top - top / samples as f64 * 0.5)?;

    let mut levels_flat = true;
    let mut diameters = Vec::with_capacity(samples);
    let mut min_h = f64::INFINITY;
    for &t in &ts {
        let base = spec.metric_at([0.0, 0.0, t])?;
        for x in [[0.3, 0.7], [1.9, -4.2]] {
            if spec.metric_at([x[0], x[1], t])? != base {
                levels_flat = false;
            }
        }
        diameters.push((t, diameter(&spec.level_lattice(t)?)?));
        min_h = min_h.min(level_torus_mean_curvature(&warped, t)?);
    }
    let diameter_decreasing = diameters.windows(2).all(|w| w[1].1 < w[0].1);

    let mut collar_error = 0.0f64;
    for i in 0..=100 {
        let t = i as f64 / 100.0;
        let g = spec.metric_at([0.0, 0.0, t])?;
        let e = (-2.0 * t).exp();
        collar_error = collar_error.max((g[0] - e).abs()).max((g[1] - e).abs());
    }

    let below = {
        let e = (-2.0 * spec.f().value(l)).exp();
        [e, e, 1.0]
    };
    let at = spec.metric_at([0.0, 0.0, l])?;
    let splice_jump = (0..3).map(|k| (at[k] - below[k]).abs()).fold(0.0, f64::max);

    let rmax = spec.core_linear_radius();
    let ez = (-2.0 * spec.f().value(top)).exp();
    let mut core_residuals = Vec::new();
    let mut core_theta_relative = 0.0f64;
    for i in 0..12 {
        let rho = rmax * 0.5f64.powi(i);
        let g = spec.core_chart_metric(rho)?;
        let r = CoreResidual {
            rho,
            theta: (g[0] - rho * rho).abs(),
            z: (g[1] - ez).abs(),
        };
        core_theta_relative = core_theta_relative.max(r.theta / (rho * rho));
        core_residuals.push(r);
    }

    let mean_convex = min_h > 0.0;
    let passed = levels_flat
        && diameter_decreasing
        && mean_convex
        && collar_error <= 1e-15
        && splice_jump <= 1e-15
        // ρ is recovered through t = L + 1 − ρ, which costs ~ε absolutely.
        && core_residuals.iter().all(|r| r.theta <= 8.0 * f64::EPSILON * r.rho)
        && core_residuals.iter().all(|r| r.z <= 1e-15);
    Ok(FillerReport {
        l,
        samples,
        levels_flat,
        diameter_decreasing,
        diameters,
        mean_convex,
        min_mean_curvature: min_h,
        collar_error,
        splice_jump,
        core_residuals,
        core_theta_relative,
        passed,
        notes: vec![
            "area chain counts ball centers up to t = L-1, not L+2".into(),
            format!("core chart is exactly rho^2 dtheta^2 + e^(-2f(L+1)) dz^2 + drho^2 for rho <= {rmax:.6e}"),
        ],
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct AreaLowerBound {
    /// `min(1, systole/2)`.
    pub rho0: f64,
    /// Spacing of the ball centers in `t`.
    pub spacing: f64,
    pub n0: u64,
    /// Monotonicity constant `c`.
    pub c: f64,
    /// `(n0 + 1) c e^{-6} ρ0²`.
    pub bound: f64,
    /// `bound / L`.
    pub kappa: f64,
}

/// Area lower bound for a minimal surface meeting every `T_t`,
/// `0 ≤ t ≤ L − 1`: disjoint balls of radius `e^{-3} ρ0` centered at
/// `t_n = 1 + 2e^{-3} n ≤ L − 1`, each carrying area `c e^{-6} ρ0²` by
/// monotonicity.
///
/// The centers are `2e^{-3}` apart, at least twice the radius since
/// `ρ0 ≤ 1`.
pub fn area_lower_bound(spec: &FillerSpec, c: f64) -> Result<AreaLowerBound> {
    if !(c > 0.0) {
        return domain("monotonicity constant must be positive");
    }
    let s = systole(&spec.lattice)?;
    if !(s > 0.0) {
        return domain("systole must be positive");
    }
    let rho0 = (0.5 * s).min(1.0);
    let e3 = (-3.0f64).exp();
    let spacing = 2.0 * e3;
    let n0 = ((spec.l - 2.0) / spacing).floor() as u64;
    let bound = (n0 + 1) as f64 * c * e3 * e3 * rho0 * rho0;
    Ok(AreaLowerBound {
        rho0,
        spacing,
        n0,
        c,
        bound,
        kappa: bound / spec.l,
    })
}
