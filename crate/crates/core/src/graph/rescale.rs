//! Rescaling a tangent minimal surface near a level torus.
//!
//! In the frame `y = h(t̄) x` the surface is a graph `u(y)` over the disk of
//! radius `√2 C`; the original coordinates see `v(x) = u(h(t̄) x)` over the
//! disk of radius `√2 C / h(t̄)`, and should satisfy `|v| ≤ A ε₀`,
//! `‖∇v‖ ≤ h(t̄)` and `‖Hess v‖ ≤ h²(t̄)/C`.

use serde::{Deserialize, Serialize};

use super::curvature::derivatives;
use super::grid::{DiscreteGraph, GridFunction};
use crate::error::{domain, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GraphBoundsParams {
    /// Hypothesis constant `A ≥ 1`.
    pub a: f64,
    /// Intrinsic radius `ε₀`.
    pub eps0: f64,
    /// Curvature bound `k₀`.
    pub k0: f64,
    /// Tangency level `t̄`.
    pub tbar: f64,
    /// Radius constant `C` of the graph region.
    pub c: f64,
    /// Reference warping at the tangency level, `h(t̄)`.
    pub h_at_tangency: f64,
}

impl GraphBoundsParams {
    fn validate(&self) -> Result<()> {
        let pos = [self.eps0, self.k0, self.c, self.h_at_tangency];
        if !(self.a >= 1.0) || pos.iter().any(|v| !(*v > 0.0)) || !self.tbar.is_finite() {
            return domain("graph bound parameters must be positive with A ≥ 1");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphBoundsReport {
    /// `sup |v| / (A ε₀)`.
    pub value_ratio: f64,
    /// `sup ‖∇v‖ / h(t̄)`.
    pub gradient_ratio: f64,
    /// `sup ‖Hess v‖ / (h²(t̄)/C)`, operator norm.
    pub hessian_ratio: f64,
    pub value_ok: bool,
    pub gradient_ok: bool,
    pub hessian_ok: bool,
    /// The slab `[t̄ − A ε₀, t̄ + A ε₀]` containing the surface.
    pub slab: (f64, f64),
    /// `e^{A² ε₀}`, the spread of `h` over the slab.
    pub warping_spread: f64,
    /// `A e^{2 A² ε₀}`, the bound on the pulled-back coefficients.
    pub coefficient_bound: f64,
    /// Radius of the disk in the original coordinates, `√2 C / h(t̄)`.
    pub radius: f64,
}

impl GraphBoundsReport {
    pub fn all_ok(&self) -> bool {
        self.value_ok && self.gradient_ok && self.hessian_ok
    }
}

/// Maps `u` (in the `y`-frame, on a grid covering the disk of radius
/// `√2 C`) to `v(x) = u(h(t̄) x)` and checks these bounds on the
/// nodes inside the disk.
pub fn rescale_graph(u: &DiscreteGraph, params: &GraphBoundsParams) -> Result<(DiscreteGraph, GraphBoundsReport)> {
    params.validate()?;
    let d = u.domain;
    let h = params.h_at_tangency;
    let radius_y = 2f64.sqrt() * params.c;
    // The rectangle must contain the disk; periodic axes are rejected.
    if d.periodic[0] || d.periodic[1] || d.e1[1] != 0.0 || d.e2[0] != 0.0 {
        return domain("graph rescaling needs an axis-aligned rectangle grid");
    }
    let far = d.point(d.n1 - 1, d.n2 - 1);
    let covers = d.origin[0] <= -radius_y && d.origin[1] <= -radius_y && far[0] >= radius_y && far[1] >= radius_y;
    if !covers {
        return domain(format!(
            "grid does not cover the disk of radius {radius_y} (√2·C) around the origin"
        ));
    }
    let v = GridFunction {
        domain: d.scaled(1.0 / h)?,
        values: u.values.clone(),
    };
    let radius_x = radius_y / h;
    let (mut sup_v, mut sup_g, mut sup_h) = (0.0f64, 0.0f64, 0.0f64);
    for k in 0..d.len() {
        let (i, j) = d.coords(k);
        let x = v.domain.point(i, j);
        if x[0].hypot(x[1]) > radius_x * (1.0 + 1e-12) {
            continue;
        }
        sup_v = sup_v.max(v.values[k].abs());
        if let Some((p, hs)) = derivatives(&v, i, j) {
            sup_g = sup_g.max(p[0].hypot(p[1]));
            // Operator norm of a symmetric 2×2 matrix.
            let mean = 0.5 * (hs[0][0] + hs[1][1]);
            let rad = (0.5 * (hs[0][0] - hs[1][1])).hypot(hs[0][1]);
            sup_h = sup_h.max(mean.abs() + rad);
        }
    }
    let (a, e0) = (params.a, params.eps0);
    let value_ratio = sup_v / (a * e0);
    let gradient_ratio = sup_g / h;
    let hessian_ratio = sup_h / (h * h / params.c);
    let slack = 1.0 + 1e-9;
    let report = GraphBoundsReport {
        value_ratio,
        gradient_ratio,
        hessian_ratio,
        value_ok: value_ratio <= slack,
        gradient_ok: gradient_ratio <= slack,
        hessian_ok: hessian_ratio <= slack,
        slab: (params.tbar - a * e0, params.tbar + a * e0),
        warping_spread: (a * a * e0).exp(),
        coefficient_bound: a * (2.0 * a * a * e0).exp(),
        radius: radius_x,
    };
    Ok((v, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::grid::GridDomain;

    fn params() -> GraphBoundsParams {
        GraphBoundsParams {
            a: 2.0,
            eps0: 0.5,
            k0: 1.0,
            tbar: 3.0,
            c: 1.0,
            h_at_tangency: 0.25,
        }
    }

    fn disk_grid() -> GridDomain {
        GridDomain::rect([-1.5, -1.5], 3.0, 3.0, 61, 61).unwrap()
    }

    #[test]
    fn zero_graph_passes() {
        let (v, r) = rescale_graph(&GridFunction::constant(disk_grid(), 0.0), &params()).unwrap();
        assert!(r.all_ok());
        assert_eq!(r.value_ratio, 0.0);
        assert!((v.domain.e1[0] - 0.05 / 0.25).abs() < 1e-14);
        assert!((r.radius - 2f64.sqrt() * 4.0).abs() < 1e-12);
        assert_eq!(r.slab, (2.0, 4.0));
    }

    #[test]
    fn extremal_hessian_reports_half() {
        let p = params();
        // v(x) = |x|² h²/(4C), so u(y) = |y|²/(4C).
        let u = GridFunction::from_fn(disk_grid(), |x, y| (x * x + y * y) / (4.0 * p.c));
        let (_, r) = rescale_graph(&u, &p).unwrap();
        assert!((r.hessian_ratio - 0.5).abs() < 1e-9, "{}", r.hessian_ratio);
        assert!(r.hessian_ok);
    }

    #[test]
    fn steep_graph_fails_gradient_bound() {
        // v(x) = 2 h x1, so u(y) = 2 y1.
        let u = GridFunction::from_fn(disk_grid(), |x, _| 2.0 * x);
        let (_, r) = rescale_graph(&u, &params()).unwrap();
        assert!((r.gradient_ratio - 2.0).abs() < 1e-9);
        assert!(!r.gradient_ok);
    }

    #[test]
    fn small_domain_rejected() {
        let g = GridDomain::rect([-1.0, -1.0], 2.0, 2.0, 11, 11).unwrap();
        assert!(rescale_graph(&GridFunction::constant(g, 0.0), &params()).is_err());
    }
}
