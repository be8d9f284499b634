//! The discrete area functional and its derivatives.
//!
//! Every cell is split along both diagonals; the four resulting corner
//! triangles each carry a quarter of the cell area (the average of the two
//! P1 triangulations). On a triangle the gradient of `u` is constant and `W`
//! is evaluated at the centroid value of `u`. The residual, the first
//! variation and the Newton Jacobian are exact derivatives of this one
//! functional, so the discrete integration-by-parts identity holds to
//! rounding.

use super::grid::{DiscreteGraph, GridDomain, GridFunction};
use crate::error::{domain, Error, Result};
use crate::profile::SharedProfile;
use crate::warped::WarpedMetricSpec;

/// `α = a1²`, `β = a2²` and their first two derivatives at a height.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Coeffs {
    pub alpha: [f64; 3],
    pub beta: [f64; 3],
}

impl Coeffs {
    pub fn at(a1: &SharedProfile, a2: &SharedProfile, u: f64) -> Self {
        let sq = |j: [f64; 4]| [j[0] * j[0], 2.0 * j[0] * j[1], 2.0 * (j[1] * j[1] + j[0] * j[2])];
        Coeffs {
            alpha: sq(a1.jet(u)),
            beta: sq(a2.jet(u)),
        }
    }
}

/// `W` and its derivatives in `u` and `p = ∇u`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct WJet {
    pub w: f64,
    pub wu: f64,
    pub wp: [f64; 2],
    pub wuu: f64,
    pub wup: [f64; 2],
    pub wpp: [[f64; 2]; 2],
}

/// `W = √(a1²a2² + a2² p1² + a1² p2²)`, written through
/// `Q = αβ + β p1² + α p2²`.
pub(crate) fn w_jet(c: &Coeffs, p: [f64; 2]) -> WJet {
    let [a, da, dda] = c.alpha;
    let [b, db, ddb] = c.beta;
    let (p1, p2) = (p[0] * p[0], p[1] * p[1]);
    let q = a * b + b * p1 + a * p2;
    let qu = da * b + a * db + db * p1 + da * p2;
    let quu = dda * b + 2.0 * da * db + a * ddb + ddb * p1 + dda * p2;
    let qp = [2.0 * b * p[0], 2.0 * a * p[1]];
    let qup = [2.0 * db * p[0], 2.0 * da * p[1]];
    let qpp = [[2.0 * b, 0.0], [0.0, 2.0 * a]];
    let w = q.sqrt();
    let i1 = 0.5 / w;
    let i3 = 0.25 / (w * w * w);
    WJet {
        w,
        wu: qu * i1,
        wp: [qp[0] * i1, qp[1] * i1],
        wuu: quu * i1 - qu * qu * i3,
        wup: [qup[0] * i1 - qu * qp[0] * i3, qup[1] * i1 - qu * qp[1] * i3],
        wpp: [
            [qpp[0][0] * i1 - qp[0] * qp[0] * i3, -qp[0] * qp[1] * i3],
            [-qp[1] * qp[0] * i3, qpp[1][1] * i1 - qp[1] * qp[1] * i3],
        ],
    }
}

/// Corner triangles of the unit cell, as corner ids `0 = (0,0)`,
/// `1 = (1,0)`, `2 = (0,1)`, `3 = (1,1)`.
const TRIANGLES: [[usize; 3]; 4] = [[0, 1, 3], [0, 3, 2], [0, 1, 2], [1, 3, 2]];
const CORNERS: [[f64; 2]; 4] = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]];

/// Per-grid constants: for each corner triangle, `∂p/∂u` at its vertices.
pub(crate) struct Stencil {
    pub dp: [[[f64; 2]; 3]; 4],
}

impl Stencil {
    pub fn new(d: &GridDomain) -> Self {
        let mut dp = [[[0.0; 2]; 3]; 4];
        for (t, tri) in TRIANGLES.iter().enumerate() {
            let edge = |m: usize| {
                let a = CORNERS[tri[m]];
                let o = CORNERS[tri[0]];
                let (s, r) = (a[0] - o[0], a[1] - o[1]);
                [s * d.e1[0] + r * d.e2[0], s * d.e1[1] + r * d.e2[1]]
            };
            let (f1, f2) = (edge(1), edge(2));
            // p solves f1·p = u1 − u0, f2·p = u2 − u0.
            let det = f1[0] * f2[1] - f1[1] * f2[0];
            let g1 = [f2[1] / det, -f2[0] / det];
            let g2 = [-f1[1] / det, f1[0] / det];
            dp[t] = [[-g1[0] - g2[0], -g1[1] - g2[1]], g1, g2];
        }
        Stencil { dp }
    }
}

/// Node indices of the four corners of cell `(ci, cj)`.
pub(crate) fn cell_nodes(d: &GridDomain, ci: usize, cj: usize) -> [usize; 4] {
    let n = |di, dj| d.neighbor(ci, cj, di, dj).expect("cell corner on grid");
    [n(0, 0), n(1, 0), n(0, 1), n(1, 1)]
}

/// Visits every corner triangle with its vertex nodes, centroid value and
/// gradient.
pub(crate) fn for_each_triangle(g: &GridFunction, mut f: impl FnMut([usize; 3], &[[f64; 2]; 3], f64, [f64; 2])) {
    let d = &g.domain;
    let st = Stencil::new(d);
    let (c1, c2) = d.cells();
    for cj in 0..c2 {
        for ci in 0..c1 {
            let corner = cell_nodes(d, ci, cj);
            for (t, tri) in TRIANGLES.iter().enumerate() {
                let nodes = [corner[tri[0]], corner[tri[1]], corner[tri[2]]];
                let u = [g.values[nodes[0]], g.values[nodes[1]], g.values[nodes[2]]];
                let dp = &st.dp[t];
                let mut p = [0.0; 2];
                for m in 0..3 {
                    p[0] += dp[m][0] * u[m];
                    p[1] += dp[m][1] * u[m];
                }
                let ubar = (u[0] + u[1] + u[2]) / 3.0;
                f(nodes, dp, ubar, p);
            }
        }
    }
}

pub(crate) fn check_range(spec: &WarpedMetricSpec, g: &GridFunction) -> Result<()> {
    let (lo, hi) = spec.interval();
    for (k, &v) in g.values.iter().enumerate() {
        if !(v >= lo && v <= hi) {
            let (i, j) = g.domain.coords(k);
            return Err(Error::OutOfRange { i, j, value: v, lo, hi });
        }
    }
    Ok(())
}

pub(crate) fn profiles(spec: &WarpedMetricSpec) -> Result<(SharedProfile, SharedProfile)> {
    let (a1, a2) = spec.diagonal_profiles()?;
    Ok((a1.clone(), a2.clone()))
}

/// Area of the graph of `u`, `∬ W dx1 dx2`.
pub fn area(spec: &WarpedMetricSpec, g: &DiscreteGraph) -> Result<f64> {
    let (a1, a2) = profiles(spec)?;
    check_range(spec, g)?;
    let weight = g.domain.cell_area() / 4.0;
    let mut total = 0.0;
    for_each_triangle(g, |_, _, ubar, p| {
        total += weight * w_jet(&Coeffs::at(&a1, &a2, ubar), p).w;
    });
    Ok(total)
}

/// `∂A/∂u_k` for every node, including boundary nodes.
pub(crate) fn area_gradient(a1: &SharedProfile, a2: &SharedProfile, g: &GridFunction) -> Vec<f64> {
    let weight = g.domain.cell_area() / 4.0;
    let mut grad = vec![0.0; g.values.len()];
    for_each_triangle(g, |nodes, dp, ubar, p| {
        let wj = w_jet(&Coeffs::at(a1, a2, ubar), p);
        for m in 0..3 {
            grad[nodes[m]] += weight * (wj.wu / 3.0 + wj.wp[0] * dp[m][0] + wj.wp[1] * dp[m][1]);
        }
    });
    grad
}

/// Hessian of the discrete area as unassembled `(row, col, value)` triplets.
pub(crate) fn area_hessian(
    a1: &SharedProfile,
    a2: &SharedProfile,
    g: &GridFunction,
    mut push: impl FnMut(usize, usize, f64),
) {
    let weight = g.domain.cell_area() / 4.0;
    for_each_triangle(g, |nodes, dp, ubar, p| {
        let wj = w_jet(&Coeffs::at(a1, a2, ubar), p);
        for a in 0..3 {
            let up_a = wj.wup[0] * dp[a][0] + wj.wup[1] * dp[a][1];
            for b in 0..3 {
                let up_b = wj.wup[0] * dp[b][0] + wj.wup[1] * dp[b][1];
                let mut pp = 0.0;
                for r in 0..2 {
                    for s in 0..2 {
                        pp += dp[a][r] * wj.wpp[r][s] * dp[b][s];
                    }
                }
                let v = wj.wuu / 9.0 + (up_a + up_b) / 3.0 + pp;
                push(nodes[a], nodes[b], weight * v);
            }
        }
    });
}

/// Discrete left-hand side of the minimal surface equation,
/// `Div((a2² u_{x1}, a1² u_{x2})/W) − W_u`, at every node.
///
/// It is `−(∂A/∂u_k)/|cell|`. Dirichlet boundary nodes carry `0`. Positive
/// values mean that raising the graph there decreases its area.
pub fn el_residual(spec: &WarpedMetricSpec, g: &DiscreteGraph) -> Result<GridFunction> {
    let (a1, a2) = profiles(spec)?;
    check_range(spec, g)?;
    let grad = area_gradient(&a1, &a2, g);
    let d = &g.domain;
    let cell = d.cell_area();
    let values = grad
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let (i, j) = d.coords(k);
            if d.is_boundary(i, j) {
                0.0
            } else {
                -v / cell
            }
        })
        .collect();
    Ok(GridFunction { domain: *d, values })
}

/// `A'(0)` for the variation `u + t v`: the integral of
/// `W_u v + W_p · ∇v` over the corner triangles.
///
/// `v` must vanish on Dirichlet boundary nodes. The result equals
/// `−|cell| Σ el_residual · v`.
pub fn first_variation(spec: &WarpedMetricSpec, g: &DiscreteGraph, v: &GridFunction) -> Result<f64> {
    let (a1, a2) = profiles(spec)?;
    g.check_same_shape(v)?;
    check_range(spec, g)?;
    let d = &g.domain;
    for (k, &x) in v.values.iter().enumerate() {
        let (i, j) = d.coords(k);
        if d.is_boundary(i, j) && x != 0.0 {
            return domain(format!("variation is {x} on boundary node ({i}, {j})"));
        }
    }
    let weight = d.cell_area() / 4.0;
    let mut total = 0.0;
    for_each_triangle(g, |nodes, dp, ubar, p| {
        let wj = w_jet(&Coeffs::at(&a1, &a2, ubar), p);
        let vv = [v.values[nodes[0]], v.values[nodes[1]], v.values[nodes[2]]];
        let vbar = (vv[0] + vv[1] + vv[2]) / 3.0;
        let mut gv = [0.0; 2];
        for m in 0..3 {
            gv[0] += dp[m][0] * vv[m];
            gv[1] += dp[m][1] * vv[m];
        }
        total += weight * (wj.wu * vbar + wj.wp[0] * gv[0] + wj.wp[1] * gv[1]);
    });
    Ok(total)
}
