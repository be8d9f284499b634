//! Closed-form area inequalities for minimal surfaces crossing a Margulis
//! tube, with the universal constants of the estimates made explicit.
//!
//! The tube metric is `cosh²r dz² + sinh²r dθ² + dr²`.

use nalgebra::Matrix2x3;
use serde::Serialize;

use crate::error::{domain, Result};

/// The Margulis-type constant appearing in the area lower bound, read as a
/// radius `ε̄`; see [`margulis_area_bound`] for the area reading.
pub const MARGULIS_CONSTANT: f64 = 0.104;

/// Area of a geodesic disk of radius `R` in `H²`, `2π(cosh R − 1)`.
///
/// Written as `4π sinh²(R/2)` to avoid cancellation for small `R`.
pub fn parallel_disk_area(r: f64) -> Result<f64> {
    if !(r >= 0.0) || !r.is_finite() {
        return domain(format!("disk radius must be finite and nonnegative, got {r}"));
    }
    let s = (0.5 * r).sinh();
    Ok(4.0 * std::f64::consts::PI * s * s)
}

/// `∫₀^R 2π sinh r dr` by double-exponential quadrature.
pub fn parallel_disk_area_quadrature(r: f64) -> Result<f64> {
    parallel_disk_area(r)?;
    let tol = 1e-14 * (1.0 + r.cosh());
    let out = quadrature::integrate(|x| 2.0 * std::f64::consts::PI * x.sinh(), 0.0, r, tol);
    Ok(out.integral)
}

#[derive(Debug, Clone, Serialize)]
pub struct ProjectionReport {
    pub samples: usize,
    pub max_singular_value: f64,
    pub min_singular_value: f64,
    /// Largest `|dΠ(e_z)|` over the grid, `e_z` the unit vector along `∂z`.
    pub z_direction_stretch: f64,
    pub contraction: bool,
}

/// Singular values of the projection `(z, θ, r) ↦ (z0, θ, r)` from the tube
/// onto a parallel disk `sinh²r dθ² + dr²`, on `z_samples` values of `z` in
/// `[0, ℓ)` times the given radii.
pub fn projection_contraction_check(length: f64, radii: &[f64], z_samples: usize) -> Result<ProjectionReport> {
    if !(length > 0.0) {
        return domain("geodesic length must be positive");
    }
    if radii.is_empty() || z_samples == 0 {
        return domain("empty sample grid");
    }
    if let Some(r) = radii.iter().find(|r| !(**r > 0.0) || !r.is_finite()) {
        return domain(format!("radii must be positive, got {r}"));
    }
    let mut max_sv = 0.0f64;
    let mut min_sv = f64::INFINITY;
    let mut z_stretch = 0.0f64;
    for k in 0..z_samples {
        // The metric does not depend on z; the loop is the literal check.
        let _z = length * k as f64 / z_samples as f64;
        for &r in radii {
            let (src, tgt) = ([r.cosh(), r.sinh(), 1.0], [r.sinh(), 1.0]);
            // dΠ in coordinates: dz ↦ 0, dθ ↦ dθ, dr ↦ dr. Conjugate by
            // the square roots of the (diagonal) metrics.
            let d = Matrix2x3::new(0.0, 1.0, 0.0, 0.0, 0.0, 1.0);
            let m = Matrix2x3::from_fn(|i, j| tgt[i] * d[(i, j)] / src[j]);
            let sv = m.svd(false, false).singular_values;
            max_sv = max_sv.max(sv.max());
            min_sv = min_sv.min(sv.min());
            z_stretch = z_stretch.max(m.column(0).norm());
        }
    }
    Ok(ProjectionReport {
        samples: radii.len() * z_samples,
        max_singular_value: max_sv,
        min_singular_value: min_sv,
        z_direction_stretch: z_stretch,
        contraction: max_sv <= 1.0 + 4.0 * f64::EPSILON,
    })
}

/// Data of the band estimate: radii `ρ1 ≤ ρ2 ≤ R_ℓ` and a systole lower
/// bound `𝔰₀ ≤ 1` for the boundary torus `S_{R_ℓ}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BandEstimate {
    pub rho1: f64,
    pub rho2: f64,
    pub systole: f64,
    pub tube_radius: f64,
}

impl BandEstimate {
    pub fn new(rho1: f64, rho2: f64, systole: f64, tube_radius: f64) -> Result<Self> {
        if !(0.0 <= rho1 && rho1 <= rho2 && rho2 <= tube_radius && tube_radius.is_finite()) {
            return domain(format!(
                "band needs 0 <= rho1 <= rho2 <= R_l, got {rho1}, {rho2}, {tube_radius}"
            ));
        }
        if !(systole > 0.0 && systole <= 1.0) {
            return domain(format!("systole bound must lie in (0, 1], got {systole}"));
        }
        if !(tube_radius > 0.0) {
            return domain("tube radius must be positive");
        }
        Ok(Self {
            rho1,
            rho2,
            systole,
            tube_radius,
        })
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct BandBound {
    /// `(𝔰₀ / sinh R_ℓ)(sinh ρ2 − sinh ρ1)`.
    pub intermediate: f64,
    /// `(2𝔰₀ / sinh R_ℓ) cosh((ρ1+ρ2)/2) sinh((ρ2−ρ1)/2)`.
    pub closed_form: f64,
}

/// Upper bound for the area of the comparison surface `S` (a systole of
/// `S_{R_ℓ}` swept radially) between `S_{ρ1}` and `S_{ρ2}`.
pub fn annulus_band_bound(e: &BandEstimate) -> BandBound {
    let k = e.systole / e.tube_radius.sinh();
    BandBound {
        intermediate: k * (e.rho2.sinh() - e.rho1.sinh()),
        closed_form: 2.0 * k * (0.5 * (e.rho1 + e.rho2)).cosh() * (0.5 * (e.rho2 - e.rho1)).sinh(),
    }
}

/// Area between `S_{ρ1}` and `S_{ρ2}` of the radial sweep of a straight
/// closed curve in `S_{R_ℓ}` with direction `(dz, dθ)` and length `𝔰₀`,
/// by quadrature of `∫ (cosh²r z'² + sinh²r θ'²)^{1/2}`.
pub fn straight_curve_band_area(e: &BandEstimate, direction: [f64; 2]) -> Result<f64> {
    let [dz, dt] = direction;
    let (c, s) = (e.tube_radius.cosh(), e.tube_radius.sinh());
    let len = ((c * dz).powi(2) + (s * dt).powi(2)).sqrt();
    if !(len > 0.0) || !len.is_finite() {
        return domain("curve direction must be nonzero");
    }
    let (zp, tp) = (e.systole * dz / len, e.systole * dt / len);
    let integrand = |r: f64| ((r.cosh() * zp).powi(2) + (r.sinh() * tp).powi(2)).sqrt();
    let scale = e.systole * e.rho2.cosh() * (e.rho2 - e.rho1).max(f64::MIN_POSITIVE);
    Ok(quadrature::integrate(integrand, e.rho1, e.rho2, 1e-15 * scale).integral)
}

/// Constants of the crossing estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CrossingConstants {
    /// `sinh a ≤ κ a` for `a ≤ 1/4`: `κ = 4 sinh(1/4)`.
    pub kappa: f64,
    /// `κ cosh ρ / sinh R_ℓ ≤ κ' sinh ρ / cosh R_ℓ` for `ρ ≥ 3/2`, `R_ℓ ≥ 3`.
    pub kappa_prime: f64,
    /// Declared constant in the final chain.
    pub kappa_double_prime: f64,
    /// `(π / 8κ'')(cosh 3 − cosh 3/2) e^{-3}`, so that the chain dominates
    /// `κ''' 𝔰₀ e^{R − R_ℓ}` for every `R ≥ 3`.
    pub kappa_triple_prime: f64,
}

impl CrossingConstants {
    pub fn new(kappa_double_prime: f64) -> Result<Self> {
        if !(kappa_double_prime > 0.0) || !kappa_double_prime.is_finite() {
            return domain("kappa'' must be positive");
        }
        let kappa = 4.0 * 0.25f64.sinh();
        let coth = |x: f64| 1.0 / x.tanh();
        Ok(Self {
            kappa,
            kappa_prime: kappa * coth(1.5) * coth(3.0),
            kappa_double_prime,
            kappa_triple_prime: std::f64::consts::PI / (8.0 * kappa_double_prime)
                * (3.0f64.cosh() - 1.5f64.cosh())
                * (-3.0f64).exp(),
        })
    }
}

impl Default for CrossingConstants {
    fn default() -> Self {
        Self::new(1.0).expect("positive constant")
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct CrossingBound {
    /// `(π/8κ'')(𝔰₀/cosh R_ℓ)(cosh R − cosh 3/2)`.
    pub chain: f64,
    /// `κ''' 𝔰₀ e^{R − R_ℓ}`.
    pub simplified: f64,
    pub constants: CrossingConstants,
}

/// The last line of the crossing chain with no restriction on `R`.
pub fn crossing_chain(r: f64, tube_radius: f64, systole: f64, kappa_double_prime: f64) -> f64 {
    std::f64::consts::PI / (8.0 * kappa_double_prime) * systole / tube_radius.cosh() * (r.cosh() - 1.5f64.cosh())
}

/// Lower bound for `|Σ ∩ N_R|` when a minimal surface crosses the tube,
/// valid for `3 ≤ R ≤ R_ℓ`.
pub fn crossing_lower_bound(
    r: f64,
    tube_radius: f64,
    systole: f64,
    constants: CrossingConstants,
) -> Result<CrossingBound> {
    if !(r >= 3.0) {
        return domain(format!("crossing estimate needs R >= 3, got {r}"));
    }
    if !(r <= tube_radius) || !tube_radius.is_finite() {
        return domain(format!("need R <= R_l, got R = {r}, R_l = {tube_radius}"));
    }
    if !(systole > 0.0) {
        return domain("systole bound must be positive");
    }
    Ok(CrossingBound {
        chain: crossing_chain(r, tube_radius, systole, constants.kappa_double_prime),
        simplified: constants.kappa_triple_prime * systole * (r - tube_radius).exp(),
        constants,
    })
}

/// `2π(cosh ε̄ − 1)`, the area of a hyperbolic disk of radius `ε̄`.
pub fn margulis_area_bound(eps: f64) -> Result<f64> {
    parallel_disk_area(eps)
}

/// `−2πχ`, the Gauss–Bonnet area of a closed hyperbolic surface.
pub fn euler_area_bound(euler_characteristic: i64) -> Result<f64> {
    if euler_characteristic >= 0 {
        return domain("a hyperbolic surface has negative Euler characteristic");
    }
    Ok(-2.0 * std::f64::consts::PI * euler_characteristic as f64)
}
