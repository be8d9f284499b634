//! Damped Newton iteration for the discrete minimal surface equation.

use faer::prelude::*;
use faer::sparse::{SparseColMat, Triplet};
use faer::Mat;
use serde::Serialize;

use super::area::{area_gradient, area_hessian, check_range, profiles};
use super::grid::{DiscreteGraph, GridFunction};
use crate::error::{Error, Result};
use crate::profile::SharedProfile;
use crate::warped::WarpedMetricSpec;

#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    /// Target for `max |el_residual|` over free nodes.
    pub tol: f64,
    pub max_iterations: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            tol: 1e-10,
            max_iterations: 60,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub iterations: usize,
    /// `max |el_residual|` before each iteration and at exit.
    pub residual_history: Vec<f64>,
    /// Iterations that fell back to a gradient step on `½‖F‖²`.
    pub gradient_steps: usize,
    /// Whether the mean of `u` was pinned because constants are (nearly) in
    /// the kernel of the Jacobian.
    pub mean_pinned: bool,
    /// `sup 1/(2 a1 a2)` over the output: converts the residual bound into a
    /// mean curvature bound.
    pub kappa_w: f64,
}

struct Problem<'a> {
    spec: &'a WarpedMetricSpec,
    a1: SharedProfile,
    a2: SharedProfile,
    free: Vec<usize>,
    slot: Vec<Option<usize>>,
    cell: f64,
}

impl Problem<'_> {
    fn residual(&self, g: &GridFunction) -> Vec<f64> {
        let grad = area_gradient(&self.a1, &self.a2, g);
        self.free.iter().map(|&k| grad[k]).collect()
    }

    fn jacobian(&self, g: &GridFunction) -> Vec<Triplet<usize, usize, f64>> {
        let mut t = Vec::new();
        area_hessian(&self.a1, &self.a2, g, |r, c, v| {
            if let (Some(r), Some(c)) = (self.slot[r], self.slot[c]) {
                t.push(Triplet::new(r, c, v));
            }
        });
        t
    }

    fn max_el(&self, f: &[f64]) -> f64 {
        f.iter().fold(0.0f64, |m, v| m.max(v.abs())) / self.cell
    }

    fn in_range(&self, g: &GridFunction) -> bool {
        check_range(self.spec, g).is_ok()
    }

    fn apply(&self, g: &GridFunction, step: &[f64], alpha: f64) -> GridFunction {
        let mut out = g.clone();
        for (s, &k) in step.iter().zip(&self.free) {
            out.values[k] += alpha * s;
        }
        out
    }
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum()
}

fn sparse_solve(n: usize, triplets: &[Triplet<usize, usize, f64>], rhs: &[f64]) -> Result<Vec<f64>> {
    let m = SparseColMat::<usize, f64>::try_new_from_triplets(n, n, triplets)
        .map_err(|e| Error::SingularJacobian(format!("assembly failed: {e:?}")))?;
    let lu = m
        .sp_lu()
        .map_err(|e| Error::SingularJacobian(format!("factorization failed: {e:?}")))?;
    let b = Mat::from_fn(n, 1, |i, _| rhs[i]);
    let x = lu.solve(&b);
    let out: Vec<f64> = (0..n).map(|i| x[(i, 0)]).collect();
    if out.iter().any(|v| !v.is_finite()) {
        return Err(Error::SingularJacobian("non-finite Newton step".into()));
    }
    Ok(out)
}

/// Solves the minimal surface equation starting from `init`.
///
/// Dirichlet boundary nodes keep their initial values; periodic axes wrap.
/// Each iteration takes a Newton step on the area gradient with Armijo
/// backtracking on `‖F‖²`, falling back to a gradient step on `½‖F‖²` when
/// the Newton direction fails to decrease it. Stops once
/// `max |el_residual| ≤ tol`.
pub fn solve(
    spec: &WarpedMetricSpec,
    init: &DiscreteGraph,
    opts: &SolveOptions,
) -> Result<(DiscreteGraph, SolveReport)> {
    let (a1, a2) = profiles(spec)?;
    check_range(spec, init)?;
    let d = init.domain;
    let mut slot = vec![None; d.len()];
    let mut free = Vec::new();
    for (k, s) in slot.iter_mut().enumerate() {
        let (i, j) = d.coords(k);
        if !d.is_boundary(i, j) {
            *s = Some(free.len());
            free.push(k);
        }
    }
    let pb = Problem {
        spec,
        a1,
        a2,
        free,
        slot,
        cell: d.cell_area(),
    };
    let n = pb.free.len();
    let mut u = init.clone();
    let mut report = SolveReport {
        iterations: 0,
        residual_history: Vec::new(),
        gradient_steps: 0,
        mean_pinned: false,
        kappa_w: 0.0,
    };
    let mut f = pb.residual(&u);
    loop {
        let r = pb.max_el(&f);
        report.residual_history.push(r);
        if r <= opts.tol || n == 0 {
            break;
        }
        if report.iterations >= opts.max_iterations {
            return Err(Error::NoConvergence {
                iterations: report.iterations,
                residual: r,
            });
        }
        report.iterations += 1;

        let mut jac = pb.jacobian(&u);
        let step = if d.has_boundary() {
            let rhs: Vec<f64> = f.iter().map(|v| -v).collect();
            sparse_solve(n, &jac, &rhs)?
        } else {
            // Constants are in the kernel when the metric does not depend on
            // x3; then border the system with a zero-mean constraint.
            let mut row_sum = vec![0.0; n];
            let mut frob = 0.0;
            for t in &jac {
                row_sum[t.row] += t.val;
                frob += t.val * t.val;
            }
            if norm2(&row_sum).sqrt() <= 1e-10 * frob.sqrt() {
                report.mean_pinned = true;
                for i in 0..n {
                    jac.push(Triplet::new(i, n, 1.0));
                    jac.push(Triplet::new(n, i, 1.0));
                }
                let mut rhs: Vec<f64> = f.iter().map(|v| -v).collect();
                rhs.push(0.0);
                let mut s = sparse_solve(n + 1, &jac, &rhs)?;
                s.truncate(n);
                s
            } else {
                let rhs: Vec<f64> = f.iter().map(|v| -v).collect();
                sparse_solve(n, &jac, &rhs)?
            }
        };

        let phi = norm2(&f);
        let mut accepted = None;
        let mut alpha = 1.0;
        for _ in 0..30 {
            let trial = pb.apply(&u, &step, alpha);
            if pb.in_range(&trial) {
                let ft = pb.residual(&trial);
                if norm2(&ft) <= (1.0 - 1e-4 * alpha) * phi {
                    accepted = Some((trial, ft));
                    break;
                }
            }
            alpha *= 0.5;
        }
        if accepted.is_none() {
            // Steepest descent on ½‖F‖²: direction −J F (J symmetric).
            report.gradient_steps += 1;
            let mut dir = vec![0.0; n];
            for t in pb.jacobian(&u) {
                dir[t.row] -= t.val * f[t.col];
            }
            let slope = norm2(&dir);
            let mut alpha = if slope > 0.0 { phi / slope } else { 0.0 };
            for _ in 0..60 {
                let trial = pb.apply(&u, &dir, alpha);
                if pb.in_range(&trial) {
                    let ft = pb.residual(&trial);
                    if norm2(&ft) <= phi - 1e-4 * alpha * slope {
                        accepted = Some((trial, ft));
                        break;
                    }
                }
                alpha *= 0.5;
            }
        }
        match accepted {
            Some((next, fnext)) => {
                u = next;
                f = fnext;
            }
            None => {
                return Err(Error::NoConvergence {
                    iterations: report.iterations,
                    residual: r,
                })
            }
        }
    }
    report.kappa_w = u
        .values
        .iter()
        .map(|&x| 0.5 / (pb.a1.value(x) * pb.a2.value(x)))
        .fold(0.0, f64::max);
    Ok((u, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::el_residual;
    use crate::graph::grid::GridDomain;
    use crate::lattice::FlatTorusLattice;

    #[test]
    fn flat_affine_dirichlet_is_reproduced() {
        let flat = WarpedMetricSpec::flat(FlatTorusLattice::unit_square(), (-5.0, 5.0)).unwrap();
        let r = GridDomain::rect([0.0, 0.0], 1.0, 1.0, 17, 17).unwrap();
        let plane = |x: f64, y: f64| 0.3 + 0.5 * x - 0.2 * y;
        let mut init = GridFunction::from_fn(r, plane);
        for k in 0..init.values.len() {
            let (i, j) = r.coords(k);
            if !r.is_boundary(i, j) {
                init.values[k] = 0.0;
            }
        }
        let (u, rep) = solve(
            &flat,
            &init,
            &SolveOptions {
                tol: 1e-12,
                max_iterations: 20,
            },
        )
        .unwrap();
        let exact = GridFunction::from_fn(r, plane);
        assert!(u.max_abs_diff(&exact).unwrap() < 1e-10);
        assert!(rep.residual_history.last().unwrap() <= &1e-12);
    }

    #[test]
    fn flat_torus_pins_the_mean() {
        let flat = WarpedMetricSpec::flat(FlatTorusLattice::unit_square(), (-5.0, 5.0)).unwrap();
        let d = GridDomain::torus(&FlatTorusLattice::unit_square(), 12, 12).unwrap();
        let init = GridFunction::from_fn(d, |x, y| {
            0.1 * (2.0 * std::f64::consts::PI * x).sin() * (2.0 * std::f64::consts::PI * y).cos()
        });
        let (u, rep) = solve(&flat, &init, &SolveOptions::default()).unwrap();
        assert!(rep.mean_pinned);
        let mean: f64 = u.values.iter().sum::<f64>() / u.values.len() as f64;
        assert!(mean.abs() < 1e-12);
        assert!(u.values.iter().all(|v| (v - mean).abs() < 1e-9));
        assert!(el_residual(&flat, &u).unwrap().max_abs_interior() <= 1e-10);
    }

    #[test]
    fn cusp_torus_has_no_constant_solution() {
        let cusp = WarpedMetricSpec::cusp(FlatTorusLattice::unit_square(), (0.0, 3.0)).unwrap();
        let d = GridDomain::torus(&FlatTorusLattice::unit_square(), 6, 6).unwrap();
        let init = GridFunction::constant(d, 1.0);
        let err = solve(
            &cusp,
            &init,
            &SolveOptions {
                tol: 1e-10,
                max_iterations: 5,
            },
        )
        .unwrap_err();
        assert!(matches!(err, Error::NoConvergence { .. } | Error::OutOfRange { .. }));
    }
}
