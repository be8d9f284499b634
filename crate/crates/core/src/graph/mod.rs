//! Graphs `x3 = u(x1, x2)` in a diagonal metric `a1² dx1² + a2² dx2² + dx3²`.
//!
//! The area element is `W = √(a1²a2² + a2² u_{x1}² + a1² u_{x2}²)` with the
//! coefficients evaluated at `u`. A graph is minimal when
//! `Div((a2² u_{x1}, a1² u_{x2})/W) − W_u = 0`.

mod area;
mod curvature;
mod grid;
mod rescale;
mod solve;

pub use area::{area, el_residual, first_variation};
pub use curvature::graph_mean_curvature;
pub use grid::{DiscreteGraph, GridDomain, GridFunction};
pub use rescale::{rescale_graph, GraphBoundsParams, GraphBoundsReport};
pub use solve::{solve, SolveOptions, SolveReport};
