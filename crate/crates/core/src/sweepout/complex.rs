use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Deepest level with exact `u64` distances in two dimensions.
pub const MAX_LEVEL: u32 = 39;

/// A 0-cell of `I(m, j)`, `m ∈ {1, 2}`: the point with coordinates
/// `coords[k] / 3^j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub level: u32,
    pub coords: Vec<u64>,
}

impl Vertex {
    pub fn new(level: u32, coords: Vec<u64>) -> Result<Self> {
        if level > MAX_LEVEL {
            return domain(format!("level {level} exceeds {MAX_LEVEL}"));
        }
        if coords.is_empty() || coords.len() > 2 {
            return domain(format!("vertices live in I or I², got {} coordinates", coords.len()));
        }
        let n = 3u64.pow(level);
        if let Some(c) = coords.iter().find(|&&c| c > n) {
            return domain(format!("coordinate {c} exceeds 3^{level}"));
        }
        Ok(Self { level, coords })
    }

    pub fn dimension(&self) -> usize {
        self.coords.len()
    }

    pub fn position(&self) -> Vec<f64> {
        let n = 3f64.powi(self.level as i32);
        self.coords.iter().map(|&c| c as f64 / n).collect()
    }
}

/// All 0-cells of `I(1, j)` in increasing order.
pub fn vertices(level: u32) -> Result<Vec<Vertex>> {
    Vertex::new(level, vec![0])?;
    Ok((0..=3u64.pow(level))
        .map(|c| Vertex { level, coords: vec![c] })
        .collect())
}

/// `d(x, y) = 3^j Σ |x_i − y_i|`, an integer.
pub fn grid_distance(x: &Vertex, y: &Vertex) -> Result<u64> {
    if x.level != y.level || x.dimension() != y.dimension() {
        return domain(format!(
            "vertices of different complexes: I({}, {}) and I({}, {})",
            x.dimension(),
            x.level,
            y.dimension(),
            y.level
        ));
    }
    Ok(x.coords.iter().zip(&y.coords).map(|(a, b)| a.abs_diff(*b)).sum())
}

/// `n(i, j)`: the nearest 0-cell of level `j ≤ i`, coordinatewise.
///
/// Ties would be broken toward 0, but none occur: the level-`j` cells have
/// odd length `3^{i−j}` in level-`i` units, so no level-`i` vertex sits at
/// a midpoint.
pub fn project_vertex(x: &Vertex, level: u32) -> Result<Vertex> {
    if level > x.level {
        return domain(format!("cannot project level {} onto finer level {level}", x.level));
    }
    let q = 3u64.pow(x.level - level);
    let coords = x
        .coords
        .iter()
        .map(|&c| {
            let (n, r) = (c / q, c % q);
            if 2 * r > q {
                n + 1
            } else {
                n
            }
        })
        .collect();
    Ok(Vertex { level, coords })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(level: u32, c: u64) -> Vertex {
        Vertex::new(level, vec![c]).unwrap()
    }

    #[test]
    fn distance_examples() {
        assert_eq!(grid_distance(&v(2, 5), &v(2, 5)).unwrap(), 0);
        assert_eq!(grid_distance(&v(1, 0), &v(1, 3)).unwrap(), 3);
        assert_eq!(grid_distance(&v(2, 1), &v(2, 3)).unwrap(), 2);
        assert!(grid_distance(&v(1, 0), &v(2, 0)).is_err());
        let p = Vertex::new(1, vec![0, 2]).unwrap();
        assert!(grid_distance(&p, &v(1, 0)).is_err());
        assert_eq!(grid_distance(&p, &Vertex::new(1, vec![3, 1]).unwrap()).unwrap(), 4);
    }

    #[test]
    fn projection_examples() {
        assert_eq!(project_vertex(&v(2, 3), 1).unwrap(), v(1, 1));
        assert_eq!(project_vertex(&v(2, 4), 1).unwrap(), v(1, 1));
        assert_eq!(project_vertex(&v(2, 5), 1).unwrap(), v(1, 2));
        assert!(project_vertex(&v(1, 1), 2).is_err());
        assert_eq!(project_vertex(&v(3, 13), 3).unwrap(), v(3, 13));
    }

    #[test]
    fn bad_vertices() {
        assert!(Vertex::new(1, vec![4]).is_err());
        assert!(Vertex::new(1, vec![]).is_err());
        assert!(Vertex::new(40, vec![0]).is_err());
    }
}
