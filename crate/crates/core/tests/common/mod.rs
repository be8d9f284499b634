//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use cuspgeom::graph::{GridDomain, GridFunction};

/// `u''` for an `x1`-independent graph `u(x2)` in
/// `α(u) dx1² + β(u) dx2² + dx3²`, written out from the Euler–Lagrange
/// equation of `∫ √(αβ + α u'²)`.
pub fn reduced_rhs(alpha: &dyn Fn(f64) -> [f64; 2], beta: &dyn Fn(f64) -> [f64; 2], u: f64, p: f64) -> f64 {
    let [a, da] = alpha(u);
    let [b, db] = beta(u);
    let w2 = a * b + a * p * p;
    let s = da * b + a * db + da * p * p;
    (0.5 * s * (w2 + a * p * p) - da * p * p * w2) / (a * a * b)
}

/// RK4 integration of `u'' = f(u, u')` from `(u0, p0)` over `[0, len]`,
/// returning `u` at `samples + 1` equally spaced points.
pub fn integrate(f: &dyn Fn(f64, f64) -> f64, u0: f64, p0: f64, len: f64, samples: usize, substeps: usize) -> Vec<f64> {
    let h = len / (samples * substeps) as f64;
    let (mut u, mut p) = (u0, p0);
    let mut out = vec![u];
    for _ in 0..samples {
        for _ in 0..substeps {
            let k1 = (p, f(u, p));
            let k2 = (p + 0.5 * h * k1.1, f(u + 0.5 * h * k1.0, p + 0.5 * h * k1.1));
            let k3 = (p + 0.5 * h * k2.1, f(u + 0.5 * h * k2.0, p + 0.5 * h * k2.1));
            let k4 = (p + h * k3.1, f(u + h * k3.0, p + h * k3.1));
            u += h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0);
            p += h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1);
        }
        out.push(u);
    }
    out
}

/// Shooting for the two-point problem `u(0) = u0`, `u(len) = u1`.
pub fn shoot(f: &dyn Fn(f64, f64) -> f64, u0: f64, u1: f64, len: f64, samples: usize) -> Vec<f64> {
    let substeps = 64;
    let end = |p: f64| *integrate(f, u0, p, len, samples, substeps).last().unwrap() - u1;
    // Secant iteration on the initial slope.
    let (mut p0, mut p1) = ((u1 - u0) / len, (u1 - u0) / len + 0.1);
    let (mut e0, mut e1) = (end(p0), end(p1));
    for _ in 0..60 {
        if e1.abs() < 1e-15 || e1 == e0 {
            break;
        }
        let p2 = p1 - e1 * (p1 - p0) / (e1 - e0);
        p0 = p1;
        e0 = e1;
        p1 = p2;
        e1 = end(p1);
    }
    integrate(f, u0, p1, len, samples, substeps)
}

/// Dirichlet data from `boundary`, interior set to `fill`.
pub fn with_boundary(
    d: GridDomain,
    boundary: impl Fn(f64, f64) -> f64,
    fill: impl Fn(f64, f64) -> f64,
) -> GridFunction {
    let mut g = GridFunction::from_fn(d, boundary);
    let interior = GridFunction::from_fn(d, fill);
    for k in 0..g.values.len() {
        let (i, j) = d.coords(k);
        if !d.is_boundary(i, j) {
            g.values[k] = interior.values[k];
        }
    }
    g
}

/// Brute-force shortest nonzero vector over `|m|, |n| ≤ bound`.
pub fn brute_force_systole(v1: [f64; 2], v2: [f64; 2], bound: i64) -> f64 {
    let mut best = f64::INFINITY;
    for m in -bound..=bound {
        for n in -bound..=bound {
            if m == 0 && n == 0 {
                continue;
            }
            let x = m as f64 * v1[0] + n as f64 * v2[0];
            let y = m as f64 * v1[1] + n as f64 * v2[1];
            best = best.min(x.hypot(y));
        }
    }
    best
}

/// Covering radius by sampling the fundamental parallelogram on an
/// `n × n` grid; a lower bound converging from below.
pub fn sampled_covering_radius(v1: [f64; 2], v2: [f64; 2], n: usize) -> f64 {
    let mut best = 0.0f64;
    for a in 0..n {
        for b in 0..n {
            let (s, t) = (a as f64 / n as f64, b as f64 / n as f64);
            let p = [s * v1[0] + t * v2[0], s * v1[1] + t * v2[1]];
            let mut near = f64::INFINITY;
            for m in -3i32..=3 {
                for k in -3i32..=3 {
                    let q = [m as f64 * v1[0] + k as f64 * v2[0], m as f64 * v1[1] + k as f64 * v2[1]];
                    near = near.min((p[0] - q[0]).hypot(p[1] - q[1]));
                }
            }
            best = best.max(near);
        }
    }
    best
}
