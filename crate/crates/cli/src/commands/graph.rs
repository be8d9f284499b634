use cuspgeom::graph::{area, graph_mean_curvature, solve, GridDomain, GridFunction, SolveOptions};
use cuspgeom::warped::{check_hypotheses, MetricDescriptor, WarpedMetricSpec};
use serde::Deserialize;
use serde_json::json;
use std::io::Write;
use std::path::Path;

use super::{emit, read_json, to_value, write_text, Outcome};
use crate::{DomainKind, Failure, Global, GraphCommand};

/// Contents of `--bc`: the rectangle (ignored on a torus) and the function
/// giving both the Dirichlet data and the initial guess.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BoundaryData {
    #[serde(default)]
    origin: [f64; 2],
    /// Side lengths; defaults to `(v1.x, v2.y)` of the metric's lattice.
    size: Option<[f64; 2]>,
    value: BoundaryValue,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
enum BoundaryValue {
    Constant(f64),
    /// `c0 + c1 x1 + c2 x2`.
    Affine([f64; 3]),
}

impl BoundaryValue {
    fn coefficients(&self) -> [f64; 3] {
        match *self {
            BoundaryValue::Constant(c) => [c, 0.0, 0.0],
            BoundaryValue::Affine(c) => c,
        }
    }
}

fn load_metric(path: &Path) -> Result<WarpedMetricSpec, Failure> {
    Ok(read_json::<MetricDescriptor>(path)?.build()?)
}

pub(crate) fn run(g: &Global, out: &mut dyn Write, c: &GraphCommand) -> Outcome {
    match c {
        GraphCommand::Solve {
            metric,
            domain,
            grid,
            bc,
            out: path,
            max_iterations,
        } => {
            let spec = load_metric(metric)?;
            let bc = match bc {
                Some(p) => Some(read_json::<BoundaryData>(p)?),
                None => None,
            };
            let (lo, hi) = spec.interval();
            let coeffs = bc
                .as_ref()
                .map_or([0.5 * (lo + hi), 0.0, 0.0], |b| b.value.coefficients());
            let (n1, n2) = *grid;
            let d = match domain {
                DomainKind::Torus => {
                    if coeffs[1] != 0.0 || coeffs[2] != 0.0 {
                        return Err(Failure::Domain(
                            "a periodic graph cannot have affine data with a slope".into(),
                        ));
                    }
                    GridDomain::torus(spec.lattice(), n1, n2)?
                }
                DomainKind::Rect => {
                    let lat = spec.lattice();
                    let origin = bc.as_ref().map_or([0.0, 0.0], |b| b.origin);
                    let [lx, ly] = bc.as_ref().and_then(|b| b.size).unwrap_or([lat.v1()[0], lat.v2()[1]]);
                    GridDomain::rect(origin, lx, ly, n1, n2)?
                }
            };
            let init = GridFunction::from_fn(d, |x, y| coeffs[0] + coeffs[1] * x + coeffs[2] * y);
            let opts = SolveOptions {
                tol: g.tol.unwrap_or(SolveOptions::default().tol),
                max_iterations: *max_iterations,
            };
            let (u, report) = solve(&spec, &init, &opts)?;
            let h = graph_mean_curvature(&spec, &u)?;
            write_text(Some(path), &grid_csv(&u), out)?;
            let (umin, umax) = u
                .values
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)));
            let v = json!({
                "grid": format!("{n1}x{n2}"),
                "iterations": report.iterations,
                "residual": report.residual_history.last().copied().unwrap_or(f64::NAN),
                "tol": opts.tol,
                "gradient_steps": report.gradient_steps,
                "mean_pinned": report.mean_pinned,
                "kappa_w": report.kappa_w,
                "area": area(&spec, &u)?,
                "max_mean_curvature": h.max_abs_interior(),
                "u_min": umin,
                "u_max": umax,
                "out": path.display().to_string(),
            });
            emit(&v, g.json, out)
        }
        GraphCommand::Hypotheses { metric, grid } => {
            let spec = load_metric(metric)?;
            emit(&to_value(&check_hypotheses(&spec, *grid)?), g.json, out)
        }
    }
}

/// One row per `j`, `n1` values each, under a versioned header.
pub(crate) fn grid_csv(u: &GridFunction) -> String {
    let d = u.domain;
    let mut s = format!("# graph-solution v1 n1={} n2={}\n", d.n1, d.n2);
    for row in u.values.chunks(d.n1) {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:.11e}")).collect();
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}
