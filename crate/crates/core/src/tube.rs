//! Margulis tubes and cusp ends.
//!
//! In tubular coordinates `(z, θ, r)` around a closed geodesic of length `ℓ`
//! the hyperbolic metric is `cosh²r dz² + sinh²r dθ² + dr²`, with the
//! identifications `θ ~ θ + 2π` and `(z, θ) ~ (z + ℓ, θ + α)`.

use std::f64::consts::{PI, SQRT_2};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::lattice::FlatTorusLattice;
use crate::profile::{Exponential, Hyperbolic, SharedProfile};
use crate::warped::WarpedMetricSpec;

fn sqrt3() -> f64 {
    3f64.sqrt()
}

/// Largest geodesic length with a guaranteed embedded tube,
/// `(√3 / 4π) ln²(1 + √2)`.
pub fn ell_max() -> f64 {
    let x = SQRT_2.ln_1p();
    sqrt3() / (4.0 * PI) * x * x
}

/// Radius `R_ℓ` of the embedded tube around a geodesic of length `ℓ`,
/// the solution of `sinh²R = ½ (√(1 − 2k)/k − 1)` with
/// `k = cosh √(4πℓ/√3) − 1`.
///
/// `R_{ℓ_max} = 0`; lengths above `ℓ_max` are rejected. The evaluation is
/// arranged so that nothing cancels near `ℓ_max`.
pub fn meyerhoff_radius(ell: f64) -> Result<f64> {
    let lmax = ell_max();
    if !(ell > 0.0) || !ell.is_finite() {
        return domain(format!("geodesic length must be positive, got {ell}"));
    }
    if ell > lmax {
        return domain(format!("length {ell} exceeds {lmax}: no embedded tube is guaranteed"));
    }
    let c = 4.0 * PI / sqrt3();
    let x = (c * ell).sqrt();
    let xm = SQRT_2.ln_1p();
    // k = cosh x − 1 and δ = k − (√2 − 1) = cosh x − cosh xm.
    let k = 2.0 * (0.5 * x).sinh().powi(2);
    let dx = c * (ell - lmax) / (x + xm);
    let delta = 2.0 * (0.5 * (x + xm)).sinh() * (0.5 * dx).sinh();
    let q = SQRT_2 - 1.0;
    let s = (1.0 - 2.0 * k).max(0.0).sqrt();
    // √(1−2k) − k = −δ (2/(s + q) + 1), using s² − q² = −2δ.
    let sinh2 = 0.5 * (-delta) * (2.0 / (s + q) + 1.0) / k;
    Ok(sinh2.max(0.0).sqrt().asinh())
}

/// The same radius by bisection on the unsimplified formula; used to
/// cross-check [`meyerhoff_radius`].
pub fn meyerhoff_radius_root_solve(ell: f64) -> Result<f64> {
    if !(ell > 0.0 && ell <= ell_max()) {
        return domain(format!("length {ell} outside (0, ℓ_max]"));
    }
    let k = (4.0 * PI * ell / sqrt3()).sqrt().cosh() - 1.0;
    let target = 0.5 * ((1.0 - 2.0 * k).max(0.0).sqrt() / k - 1.0);
    if target <= 0.0 {
        return Ok(0.0);
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi.sinh().powi(2) < target {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid.sinh().powi(2) < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Area of the torus `S_r`, `πℓ sinh 2r`.
pub fn slice_area(ell: f64, r: f64) -> Result<f64> {
    if !(ell > 0.0) || !(r >= 0.0) {
        return domain(format!("slice area needs ℓ > 0 and r ≥ 0 (ℓ = {ell}, r = {r})"));
    }
    Ok(PI * ell * (2.0 * r).sinh())
}

/// Mean curvature of `S_r` with respect to `−∂_r`, `(tanh r + coth r)/2`.
pub fn slice_mean_curvature(r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return domain(format!("slice mean curvature needs r > 0, got {r}"));
    }
    Ok(0.5 * (r.tanh() + 1.0 / r.tanh()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TubeParams {
    pub length: f64,
    pub twist: f64,
    pub radius: f64,
}

impl TubeParams {
    pub fn new(length: f64, twist: f64, radius: f64) -> Result<Self> {
        if !(length > 0.0 && length.is_finite()) {
            return domain(format!("tube length must be positive, got {length}"));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return domain(format!("tube radius must be positive, got {radius}"));
        }
        if !twist.is_finite() {
            return domain("twist must be finite");
        }
        Ok(TubeParams { length, twist, radius })
    }

    /// Tube of the Meyerhoff radius `R_ℓ`.
    pub fn meyerhoff(length: f64, twist: f64) -> Result<Self> {
        let r = meyerhoff_radius(length)?;
        if r <= 0.0 {
            return domain("Meyerhoff radius is zero at ℓ_max");
        }
        Self::new(length, twist, r)
    }

    /// Whether `R ≤ R_ℓ`, i.e. the tube is known to be embedded.
    pub fn is_embedded(&self) -> bool {
        meyerhoff_radius(self.length).is_ok_and(|r| self.radius <= r * (1.0 + 1e-12))
    }

    /// Coordinate lattice of `(θ, z)`: `(2π, 0)` and `(α, ℓ)`.
    pub fn coordinate_lattice(&self) -> Result<FlatTorusLattice> {
        FlatTorusLattice::new(2.0 * PI, self.twist, self.length)
    }
}

/// Lattice of the flat torus `S_r` in orthonormal coordinates,
/// `v1 = (2π sinh r, 0)` and `v2 = (α sinh r, ℓ cosh r)`.
pub fn boundary_lattice(p: &TubeParams, r: f64) -> Result<FlatTorusLattice> {
    if !(r > 0.0) {
        return domain(format!("boundary lattice needs r > 0, got {r}"));
    }
    if r > p.radius * (1.0 + 1e-12) {
        return domain(format!("r = {r} exceeds the tube radius {}", p.radius));
    }
    let (s, c) = (r.sinh(), r.cosh());
    FlatTorusLattice::new(2.0 * PI * s, p.twist * s, p.length * c)
}

/// The tube in depth coordinates `(x1, x2, t) = (θ, z, R − r)`:
/// `sinh²(R−t) dx1² + cosh²(R−t) dx2² + dt²` on `[0, R − 1/2]`, with
/// reference warping `h(t) = sinh(R−t)/sinh R` and reference scale `sinh R`.
///
/// The window stops at `R − 1/2`, where the hypothesis constants are still
/// controlled; use [`WarpedMetricSpec::with_interval`] for other windows
/// inside `[0, R)`.
pub fn tube_as_warped(p: &TubeParams) -> Result<WarpedMetricSpec> {
    let r = p.radius;
    let top = if r > 1.0 { r - 0.5 } else { 0.5 * r };
    let a1: SharedProfile = Arc::new(Hyperbolic::sinh_reflected(r, 1.0));
    let a2: SharedProfile = Arc::new(Hyperbolic::cosh_reflected(r, 1.0));
    let h: SharedProfile = Arc::new(Hyperbolic::sinh_reflected(r, 1.0 / r.sinh()));
    WarpedMetricSpec::diagonal(p.coordinate_lattice()?, (0.0, top), a1, a2, h, r.sinh())
}

/// The tube in radial coordinates `(x1, x2, x3) = (θ, z, r)`:
/// `sinh²r dx1² + cosh²r dx2² + dr²` on the given `r`-interval, with
/// reference warping `sinh r`.
pub fn tube_radial(p: &TubeParams, interval: (f64, f64)) -> Result<WarpedMetricSpec> {
    if !(interval.0 > 0.0) {
        return domain("radial tube interval must stay away from the core r = 0");
    }
    let a1: SharedProfile = Arc::new(Hyperbolic::sinh());
    let a2: SharedProfile = Arc::new(Hyperbolic::cosh());
    WarpedMetricSpec::diagonal(p.coordinate_lattice()?, interval, a1.clone(), a2, a1, 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CuspParams {
    pub lattice: FlatTorusLattice,
    pub depth: (f64, f64),
}

impl CuspParams {
    pub fn new(lattice: FlatTorusLattice, depth: (f64, f64)) -> Result<Self> {
        if !(depth.0 < depth.1) || !depth.0.is_finite() || !depth.1.is_finite() {
            return domain(format!("cusp depth range [{}, {}] must be nonempty", depth.0, depth.1));
        }
        Ok(CuspParams { lattice, depth })
    }

    /// Lattice of `T_t`, which is `e^{-t}` times the base lattice.
    pub fn level_lattice(&self, t: f64) -> Result<FlatTorusLattice> {
        self.lattice.scaled((-t).exp())
    }
}

/// `e^{-2t} dσ² + dt²` over the depth range.
pub fn cusp_as_warped(c: &CuspParams) -> Result<WarpedMetricSpec> {
    let e: SharedProfile = Arc::new(Exponential { scale: 1.0, rate: -1.0 });
    WarpedMetricSpec::diagonal(c.lattice, c.depth, e.clone(), e.clone(), e, 1.0)
}

/// Range `[e^{-2d}, e^{-d/2}]` for the factor `δ` such that the level `d`
/// deeper than an `ε`-thin boundary lies in the `δε`-thin part.
pub fn thin_part_factor_range(depth: f64) -> (f64, f64) {
    ((-2.0 * depth).exp(), (-0.5 * depth).exp())
}
