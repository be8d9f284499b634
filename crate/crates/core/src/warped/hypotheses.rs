//! Empirical hypothesis constants H1–H4 on a sample grid.

use nalgebra::{Matrix3, SymmetricEigen};
use serde::Serialize;

use super::{level_mean_curvature_general, Coefficients, WarpedMetricSpec};
use crate::error::{domain, Error, Result};

/// Number of horizontal indices (1 or 2, 1-based) among `indices`.
///
/// A coefficient derivative `∂_{α} a_kl` scales like `H^{n(k, l, α)}` under
/// the blow-up, where `H` is the reference horizontal scale.
pub fn exponent_count(indices: &[usize]) -> u32 {
    indices.iter().filter(|&&i| i == 1 || i == 2).count() as u32
}

#[derive(Debug, Clone, Serialize)]
pub struct SampleGrid {
    pub interval: (f64, f64),
    pub x3_points: usize,
    /// Points per horizontal axis; 1 when the coefficients do not depend on
    /// `(x1, x2)`.
    pub horizontal_points: usize,
}

/// Suprema of the hypothesis ratios over the sample grid.
///
/// These are measurements on a grid, not certified bounds.
#[derive(Debug, Clone, Serialize)]
pub struct HypothesisReport {
    /// `max(λ_max, 1/λ_min)` of `g` relative to `ḡ`.
    pub a_h1: f64,
    pub a_h1_at: f64,
    /// `max` of `h2_terms`.
    pub a_h2: f64,
    /// `sup |h'|/h`, `sup |h''|/h`, `sup |h'''|/h`.
    pub h2_terms: [f64; 3],
    pub a_h2_at: f64,
    /// `max` of `h3_terms`.
    pub a_h3: f64,
    /// `sup |∂^α a_kl| / H^{n(k,l,α)}` for `|α| = 0, 1, 2, 3`.
    pub h3_terms: [f64; 4],
    pub h_monotone: bool,
    pub mean_convex: bool,
    /// Smallest sampled level-torus mean curvature (positive toward `+∂_{x3}`).
    pub min_level_mean_curvature: f64,
    pub grid: SampleGrid,
}

pub fn check_hypotheses(spec: &WarpedMetricSpec, grid: usize) -> Result<HypothesisReport> {
    if grid < 8 {
        return domain(format!("hypothesis grid needs at least 8 points per axis, got {grid}"));
    }
    let (a, b) = spec.interval();
    let horizontal = match spec.coefficients() {
        Coefficients::Diagonal { .. } => 1,
        Coefficients::General(_) => grid,
    };
    let v1 = spec.lattice().v1();
    let v2 = spec.lattice().v2();

    let mut report = HypothesisReport {
        a_h1: 0.0,
        a_h1_at: a,
        a_h2: 0.0,
        h2_terms: [0.0; 3],
        a_h2_at: a,
        a_h3: 0.0,
        h3_terms: [0.0; 4],
        h_monotone: true,
        mean_convex: true,
        min_level_mean_curvature: f64::INFINITY,
        grid: SampleGrid {
            interval: (a, b),
            x3_points: grid,
            horizontal_points: horizontal,
        },
    };

    for m in 0..grid {
        let x3 = a + (b - a) * m as f64 / (grid - 1) as f64;
        let hj = spec.warping().jet(x3);
        if !(hj[0] > 0.0) {
            return domain(format!("warping not positive at x3 = {x3}"));
        }
        let ratio2 = [hj[1].abs() / hj[0], hj[2].abs() / hj[0], hj[3].abs() / hj[0]];
        for (t, r) in report.h2_terms.iter_mut().zip(ratio2) {
            *t = t.max(r);
        }
        let r2 = ratio2.iter().cloned().fold(0.0, f64::max);
        if r2 > report.a_h2 {
            report.a_h2 = r2;
            report.a_h2_at = x3;
        }
        if hj[1] > 0.0 {
            report.h_monotone = false;
        }
        let big_h = spec.reference_scale() * hj[0];

        for i in 0..horizontal {
            for j in 0..horizontal {
                let (s1, s2) = (i as f64 / horizontal as f64, j as f64 / horizontal as f64);
                let x = [s1 * v1[0] + s2 * v2[0], s1 * v1[1] + s2 * v2[1], x3];
                let jet = spec.coefficient_jet(x);

                let gm = Matrix3::from_fn(|k, l| jet.value[k][l]);
                let eig_g = SymmetricEigen::new(gm).eigenvalues.min();
                if !(eig_g > 0.0) {
                    return Err(Error::NotPositiveDefinite {
                        x1: x[0],
                        x2: x[1],
                        x3,
                        eig: eig_g,
                    });
                }
                let a1 = h1_ratio(&jet.value, big_h);
                if a1 > report.a_h1 {
                    report.a_h1 = a1;
                    report.a_h1_at = x3;
                }

                for k in 0..3 {
                    for l in 0..3 {
                        let base = exponent_count(&[k + 1, l + 1]) as i32;
                        let h3 = &mut report.h3_terms;
                        h3[0] = h3[0].max(jet.value[k][l].abs() / big_h.powi(base));
                        for p in 0..3 {
                            let n = base + exponent_count(&[p + 1]) as i32;
                            h3[1] = h3[1].max(jet.d1[p][k][l].abs() / big_h.powi(n));
                            for q in 0..3 {
                                let n = n + exponent_count(&[q + 1]) as i32;
                                h3[2] = h3[2].max(jet.d2[p][q][k][l].abs() / big_h.powi(n));
                                for r in 0..3 {
                                    let n = n + exponent_count(&[r + 1]) as i32;
                                    h3[3] = h3[3].max(jet.d3[p][q][r][k][l].abs() / big_h.powi(n));
                                }
                            }
                        }
                    }
                }

                let hm = level_mean_curvature_general(&jet)
                    .ok_or_else(|| Error::Domain(format!("level torus mean curvature undefined at x3 = {x3}")))?;
                report.min_level_mean_curvature = report.min_level_mean_curvature.min(hm);
                if hm < -1e-12 {
                    report.mean_convex = false;
                }
            }
        }
    }
    report.a_h3 = report.h3_terms.iter().cloned().fold(0.0, f64::max);
    Ok(report)
}

/// `max(λ_max, 1/λ_min)` for the pencil `(g, diag(H², H², 1))`.
fn h1_ratio(g: &[[f64; 3]; 3], big_h: f64) -> f64 {
    let d = [big_h, big_h, 1.0];
    let off = g[0][1] != 0.0 || g[0][2] != 0.0 || g[1][2] != 0.0;
    let eigs: Vec<f64> = if off {
        let m = Matrix3::from_fn(|k, l| g[k][l] / (d[k] * d[l]));
        SymmetricEigen::new(m).eigenvalues.iter().cloned().collect()
    } else {
        (0..3).map(|k| g[k][k] / (d[k] * d[k])).collect()
    };
    let max = eigs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = eigs.iter().cloned().fold(f64::INFINITY, f64::min);
    max.max(1.0 / min)
}
