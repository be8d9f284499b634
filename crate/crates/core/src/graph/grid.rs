use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::lattice::FlatTorusLattice;

/// A parallelogram grid of nodes `origin + i·e1 + j·e2`.
///
/// A periodic axis with `n` nodes has `n` cells and wraps around; a
/// Dirichlet axis has `n − 1` cells and its two end rows are boundary nodes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridDomain {
    pub n1: usize,
    pub n2: usize,
    pub e1: [f64; 2],
    pub e2: [f64; 2],
    pub origin: [f64; 2],
    pub periodic: [bool; 2],
}

const MIN_NODES: usize = 4;

impl GridDomain {
    fn checked(self) -> Result<Self> {
        if self.n1 < MIN_NODES || self.n2 < MIN_NODES {
            return domain(format!(
                "grid needs at least {MIN_NODES} nodes per axis, got {}x{}",
                self.n1, self.n2
            ));
        }
        let det = self.cell_area();
        if !(det > 0.0) || !det.is_finite() {
            return domain("grid cell is degenerate");
        }
        Ok(self)
    }

    /// Periodic grid over the fundamental domain of `lattice`.
    pub fn torus(lattice: &FlatTorusLattice, n1: usize, n2: usize) -> Result<Self> {
        let (v1, v2) = (lattice.v1(), lattice.v2());
        GridDomain {
            n1,
            n2,
            e1: [v1[0] / n1 as f64, v1[1] / n1 as f64],
            e2: [v2[0] / n2 as f64, v2[1] / n2 as f64],
            origin: [0.0, 0.0],
            periodic: [true, true],
        }
        .checked()
    }

    /// Rectangle `[x0, x0 + lx] × [y0, y0 + ly]` with boundary nodes on all
    /// four sides.
    pub fn rect(origin: [f64; 2], lx: f64, ly: f64, n1: usize, n2: usize) -> Result<Self> {
        if n1 < 2 || n2 < 2 {
            return domain("rectangle grid needs at least 2 nodes per axis");
        }
        GridDomain {
            n1,
            n2,
            e1: [lx / (n1 - 1) as f64, 0.0],
            e2: [0.0, ly / (n2 - 1) as f64],
            origin,
            periodic: [false, false],
        }
        .checked()
    }

    /// Periodic of period `p1` in `x1`, Dirichlet at `x2 = y0` and `x2 = y0 + ly`.
    pub fn stripe(p1: f64, y0: f64, ly: f64, n1: usize, n2: usize) -> Result<Self> {
        if n2 < 2 {
            return domain("stripe grid needs at least 2 nodes across");
        }
        GridDomain {
            n1,
            n2,
            e1: [p1 / n1 as f64, 0.0],
            e2: [0.0, ly / (n2 - 1) as f64],
            origin: [0.0, y0],
            periodic: [true, false],
        }
        .checked()
    }

    pub fn len(&self) -> usize {
        self.n1 * self.n2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.n1 + i
    }

    pub fn coords(&self, k: usize) -> (usize, usize) {
        (k % self.n1, k / self.n1)
    }

    pub fn point(&self, i: usize, j: usize) -> [f64; 2] {
        let (a, b) = (i as f64, j as f64);
        [
            self.origin[0] + a * self.e1[0] + b * self.e2[0],
            self.origin[1] + a * self.e1[1] + b * self.e2[1],
        ]
    }

    /// `|e1 × e2|`, the area of one cell and the area carried by one node.
    pub fn cell_area(&self) -> f64 {
        (self.e1[0] * self.e2[1] - self.e1[1] * self.e2[0]).abs()
    }

    pub fn cells(&self) -> (usize, usize) {
        let c = |n: usize, p: bool| if p { n } else { n - 1 };
        (c(self.n1, self.periodic[0]), c(self.n2, self.periodic[1]))
    }

    pub fn is_boundary(&self, i: usize, j: usize) -> bool {
        (!self.periodic[0] && (i == 0 || i == self.n1 - 1)) || (!self.periodic[1] && (j == 0 || j == self.n2 - 1))
    }

    pub fn has_boundary(&self) -> bool {
        !(self.periodic[0] && self.periodic[1])
    }

    /// Node index of `(i + di, j + dj)`, wrapping periodic axes; `None` off
    /// the grid.
    pub fn neighbor(&self, i: usize, j: usize, di: isize, dj: isize) -> Option<usize> {
        let step = |x: usize, d: isize, n: usize, p: bool| -> Option<usize> {
            let y = x as isize + d;
            if p {
                Some(y.rem_euclid(n as isize) as usize)
            } else if y < 0 || y >= n as isize {
                None
            } else {
                Some(y as usize)
            }
        };
        let a = step(i, di, self.n1, self.periodic[0])?;
        let b = step(j, dj, self.n2, self.periodic[1])?;
        Some(self.index(a, b))
    }

    /// Same grid with every length multiplied by `s`.
    pub fn scaled(&self, s: f64) -> Result<Self> {
        if !(s > 0.0) {
            return domain("grid scale must be positive");
        }
        let m = |v: [f64; 2]| [s * v[0], s * v[1]];
        Ok(GridDomain {
            e1: m(self.e1),
            e2: m(self.e2),
            origin: m(self.origin),
            ..*self
        })
    }

    /// `J⁻¹` for `J = [e1 e2]`, mapping displacement to grid steps.
    pub(crate) fn inverse_frame(&self) -> [[f64; 2]; 2] {
        let det = self.e1[0] * self.e2[1] - self.e1[1] * self.e2[0];
        [
            [self.e2[1] / det, -self.e2[0] / det],
            [-self.e1[1] / det, self.e1[0] / det],
        ]
    }
}

/// A scalar field sampled on the nodes of a grid; `values[j*n1 + i]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridFunction {
    pub domain: GridDomain,
    pub values: Vec<f64>,
}

/// The graph `x3 = u(x1, x2)` of a grid function.
pub type DiscreteGraph = GridFunction;

impl GridFunction {
    pub fn new(domain: GridDomain, values: Vec<f64>) -> Result<Self> {
        if values.len() != domain.len() {
            return Err(Error::ShapeMismatch {
                expected: format!("{} values ({}x{})", domain.len(), domain.n1, domain.n2),
                got: format!("{} values", values.len()),
            });
        }
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            let (i, j) = domain.coords(k);
            return domain_err(format!("value at node ({i}, {j}) is not finite"));
        }
        Ok(GridFunction { domain, values })
    }

    pub fn constant(domain: GridDomain, c: f64) -> Self {
        GridFunction {
            domain,
            values: vec![c; domain.len()],
        }
    }

    pub fn from_fn(domain: GridDomain, f: impl Fn(f64, f64) -> f64) -> Self {
        let mut values = Vec::with_capacity(domain.len());
        for j in 0..domain.n2 {
            for i in 0..domain.n1 {
                let p = domain.point(i, j);
                values.push(f(p[0], p[1]));
            }
        }
        GridFunction { domain, values }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[self.domain.index(i, j)]
    }

    /// Largest absolute value over nodes that are not on a Dirichlet boundary.
    pub fn max_abs_interior(&self) -> f64 {
        let d = &self.domain;
        (0..d.len())
            .filter(|&k| {
                let (i, j) = d.coords(k);
                !d.is_boundary(i, j)
            })
            .map(|k| self.values[k].abs())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &GridFunction) -> Result<f64> {
        self.check_same_shape(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    pub(crate) fn check_same_shape(&self, other: &GridFunction) -> Result<()> {
        let (a, b) = (&self.domain, &other.domain);
        if a.n1 != b.n1 || a.n2 != b.n2 || other.values.len() != self.values.len() {
            return Err(Error::ShapeMismatch {
                expected: format!("{}x{}", a.n1, a.n2),
                got: format!("{}x{}", b.n1, b.n2),
            });
        }
        Ok(())
    }

    /// Every `stride`-th node along both axes, starting at node 0. Used to
    /// compare nested grids.
    pub fn subsample(&self, stride: usize) -> Result<GridFunction> {
        let d = &self.domain;
        if stride == 0 {
            return domain_err("stride must be positive".to_string());
        }
        let ok = |n: usize, p: bool| {
            if p {
                n.is_multiple_of(stride)
            } else {
                (n - 1).is_multiple_of(stride)
            }
        };
        if !ok(d.n1, d.periodic[0]) || !ok(d.n2, d.periodic[1]) {
            return domain_err(format!("grid {}x{} does not nest with stride {stride}", d.n1, d.n2));
        }
        let m = |n: usize, p: bool| if p { n / stride } else { (n - 1) / stride + 1 };
        let (m1, m2) = (m(d.n1, d.periodic[0]), m(d.n2, d.periodic[1]));
        let s = stride as f64;
        let dom = GridDomain {
            n1: m1,
            n2: m2,
            e1: [d.e1[0] * s, d.e1[1] * s],
            e2: [d.e2[0] * s, d.e2[1] * s],
            ..*d
        };
        let mut values = Vec::with_capacity(m1 * m2);
        for j in 0..m2 {
            for i in 0..m1 {
                values.push(self.get(i * stride, j * stride));
            }
        }
        Ok(GridFunction { domain: dom, values })
    }
}

fn domain_err<T>(msg: String) -> Result<T> {
    Err(Error::Domain(msg))
}
