use super::area::profiles;
use super::grid::{DiscreteGraph, GridFunction};
use crate::error::Result;
use crate::warped::WarpedMetricSpec;

/// First and second derivatives of `u` at node `(i, j)` in `x`-coordinates,
/// by centered differences along the grid axes. `None` on Dirichlet
/// boundary nodes.
pub(crate) fn derivatives(g: &GridFunction, i: usize, j: usize) -> Option<([f64; 2], [[f64; 2]; 2])> {
    let d = &g.domain;
    let at = |di: isize, dj: isize| d.neighbor(i, j, di, dj).map(|k| g.values[k]);
    let u = g.get(i, j);
    let (e, w, n, s) = (at(1, 0)?, at(-1, 0)?, at(0, 1)?, at(0, -1)?);
    let (ne, nw, se, sw) = (at(1, 1)?, at(-1, 1)?, at(1, -1)?, at(-1, -1)?);
    let dg = [0.5 * (e - w), 0.5 * (n - s)];
    let dd = [
        [e - 2.0 * u + w, 0.25 * (ne - nw - se + sw)],
        [0.25 * (ne - nw - se + sw), n - 2.0 * u + s],
    ];
    // x-derivatives: ∇u = J^{-T} D, Hess u = J^{-T} DD J^{-1}.
    let m = d.inverse_frame();
    let mut p = [0.0; 2];
    let mut hess = [[0.0; 2]; 2];
    for a in 0..2 {
        for k in 0..2 {
            p[a] += m[k][a] * dg[k];
        }
        for b in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    hess[a][b] += m[k][a] * dd[k][l] * m[l][b];
                }
            }
        }
    }
    Some((p, hess))
}

/// Mean curvature `H = ½ γ^{ij} h_ij` of the graph with respect to the
/// upward unit normal, from the induced metric and second fundamental form.
///
/// The sign matches [`crate::warped::level_torus_mean_curvature`]: a
/// constant graph in the cusp has `H = 1`. At interior nodes
/// `el_residual = 2 H a1 a2` up to discretization error. Dirichlet boundary
/// nodes carry `0`.
pub fn graph_mean_curvature(spec: &WarpedMetricSpec, g: &DiscreteGraph) -> Result<GridFunction> {
    let (a1, a2) = profiles(spec)?;
    let d = g.domain;
    let mut values = vec![0.0; d.len()];
    for (k, out) in values.iter_mut().enumerate() {
        let (i, j) = d.coords(k);
        let Some((p, hs)) = derivatives(g, i, j) else {
            continue;
        };
        let u = g.values[k];
        let (j1, j2) = (a1.jet(u), a2.jet(u));
        let (alpha, beta) = (j1[0] * j1[0], j2[0] * j2[0]);
        // Christoffel symbols of diag(a1², a2², 1) with x3-dependence only.
        let g3_11 = -j1[0] * j1[1];
        let g3_22 = -j2[0] * j2[1];
        let g1_13 = j1[1] / j1[0];
        let g2_23 = j2[1] / j2[0];
        let norm = (1.0 + p[0] * p[0] / alpha + p[1] * p[1] / beta).sqrt();
        let tangent = |a: usize| -> [f64; 3] {
            if a == 0 {
                [1.0, 0.0, p[0]]
            } else {
                [0.0, 1.0, p[1]]
            }
        };
        let mut second = [[0.0; 2]; 2];
        for a in 0..2 {
            for b in 0..2 {
                let (x, y) = (tangent(a), tangent(b));
                let v1 = g1_13 * (x[0] * y[2] + x[2] * y[0]);
                let v2 = g2_23 * (x[1] * y[2] + x[2] * y[1]);
                let v3 = hs[a][b] + g3_11 * x[0] * y[0] + g3_22 * x[1] * y[1];
                // g(V, N) with N = (−u1/α, −u2/β, 1)/norm.
                second[a][b] = (-p[0] * v1 - p[1] * v2 + v3) / norm;
            }
        }
        let gm = [[alpha + p[0] * p[0], p[0] * p[1]], [p[0] * p[1], beta + p[1] * p[1]]];
        let det = gm[0][0] * gm[1][1] - gm[0][1] * gm[1][0];
        let inv = [[gm[1][1] / det, -gm[0][1] / det], [-gm[1][0] / det, gm[0][0] / det]];
        let mut trace = 0.0;
        for a in 0..2 {
            for b in 0..2 {
                trace += inv[a][b] * second[a][b];
            }
        }
        *out = 0.5 * trace;
    }
    Ok(GridFunction { domain: d, values })
}
