//! Rank-2 lattices describing flat tori.
//!
//! A flat torus `(T, dσ²)` is `R²/Γ`; in a well-oriented orthonormal frame the
//! lattice `Γ` is generated by `v1 = (a1, 0)` and `v2 = (a2, b2)` with
//! `a1, b2 > 0`. Every constructor normalizes to that form.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative degeneracy threshold: `det <= DEGENERACY_TOL * max(|v1|, |v2|)^2`
/// is rejected.
pub const DEGENERACY_TOL: f64 = 1e-12;

pub type Vec2 = [f64; 2];

fn dot(a: Vec2, b: Vec2) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

fn norm(a: Vec2) -> f64 {
    a[0].hypot(a[1])
}

fn sub(a: Vec2, b: Vec2) -> Vec2 {
    [a[0] - b[0], a[1] - b[1]]
}

fn cross(a: Vec2, b: Vec2) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Generators of a flat-torus lattice in well-oriented form.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "LatticeJson", into = "LatticeJson")]
pub struct FlatTorusLattice {
    v1: Vec2,
    v2: Vec2,
}

#[derive(Serialize, Deserialize)]
struct LatticeJson {
    v1: Vec2,
    v2: Vec2,
}

impl TryFrom<LatticeJson> for FlatTorusLattice {
    type Error = Error;

    fn try_from(j: LatticeJson) -> Result<Self> {
        FlatTorusLattice::from_generators(j.v1, j.v2)
    }
}

impl From<FlatTorusLattice> for LatticeJson {
    fn from(l: FlatTorusLattice) -> Self {
        LatticeJson { v1: l.v1, v2: l.v2 }
    }
}

impl fmt::Debug for FlatTorusLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FlatTorusLattice(v1=({}, {}), v2=({}, {}))",
            self.v1[0], self.v1[1], self.v2[0], self.v2[1]
        )
    }
}

impl FlatTorusLattice {
    /// Builds the lattice `v1 = (a1, 0)`, `v2 = (a2, b2)`.
    pub fn new(a1: f64, a2: f64, b2: f64) -> Result<Self> {
        if !(a1.is_finite() && a2.is_finite() && b2.is_finite()) {
            return Err(Error::Domain("lattice entries must be finite".into()));
        }
        Self::from_generators([a1, 0.0], [a2, b2])
    }

    /// Builds a lattice from two arbitrary generators, rotating (and if
    /// needed reflecting the second generator) into well-oriented form.
    pub fn from_generators(v1: Vec2, v2: Vec2) -> Result<Self> {
        let n1 = norm(v1);
        let scale = n1.max(norm(v2));
        let det = cross(v1, v2);
        if !det.is_finite() || det.abs() <= DEGENERACY_TOL * scale * scale {
            return Err(Error::DegenerateLattice {
                det: det.abs(),
                tol: DEGENERACY_TOL,
            });
        }
        // Rotate v1 onto the positive x-axis.
        let (c, s) = (v1[0] / n1, v1[1] / n1);
        let a2 = c * v2[0] + s * v2[1];
        let b2 = -s * v2[0] + c * v2[1];
        // -v2 generates the same lattice together with v1.
        let (a2, b2) = if b2 < 0.0 { (-a2, -b2) } else { (a2, b2) };
        Ok(FlatTorusLattice {
            v1: [n1, 0.0],
            v2: [a2, b2],
        })
    }

    /// Parses the literal `"a1,a2,b2"`.
    pub fn parse_literal(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::Domain(format!(
                "lattice literal must be \"a1,a2,b2\", got {s:?}"
            )));
        }
        let mut vals = [0.0; 3];
        for (v, p) in vals.iter_mut().zip(&parts) {
            *v = p
                .parse()
                .map_err(|_| Error::Domain(format!("bad number {p:?} in lattice literal")))?;
        }
        Self::new(vals[0], vals[1], vals[2])
    }

    pub fn unit_square() -> Self {
        FlatTorusLattice {
            v1: [1.0, 0.0],
            v2: [0.0, 1.0],
        }
    }

    pub fn hexagonal() -> Self {
        FlatTorusLattice {
            v1: [1.0, 0.0],
            v2: [0.5, 3f64.sqrt() / 2.0],
        }
    }

    fn check_degenerate(&self) -> Result<()> {
        let scale = norm(self.v1).max(norm(self.v2));
        let det = self.area();
        if !(det > DEGENERACY_TOL * scale * scale) {
            return Err(Error::DegenerateLattice {
                det,
                tol: DEGENERACY_TOL,
            });
        }
        Ok(())
    }

    pub fn v1(&self) -> Vec2 {
        self.v1
    }

    pub fn v2(&self) -> Vec2 {
        self.v2
    }

    /// `(a1, a2, b2)`.
    pub fn coefficients(&self) -> (f64, f64, f64) {
        (self.v1[0], self.v2[0], self.v2[1])
    }

    /// Area of the torus, `a1 * b2`.
    pub fn area(&self) -> f64 {
        self.v1[0] * self.v2[1]
    }

    /// `lat ↦ λ·lat`.
    pub fn scaled(&self, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) {
            return Err(Error::Domain(format!("scale factor {lambda} must be positive")));
        }
        Self::new(lambda * self.v1[0], lambda * self.v2[0], lambda * self.v2[1])
    }

    /// Image of the lattice under `diag(sx, sy)`; keeps well-oriented form.
    pub fn stretched(&self, sx: f64, sy: f64) -> Result<Self> {
        if !(sx > 0.0 && sy > 0.0) {
            return Err(Error::Domain("stretch factors must be positive".into()));
        }
        Self::new(sx * self.v1[0], sx * self.v2[0], sy * self.v2[1])
    }

    pub fn to_literal(&self) -> String {
        format!("{},{},{}", self.v1[0], self.v2[0], self.v2[1])
    }
}

/// Lagrange–Gauss reduction. The result satisfies `|v1| <= |v2|` and
/// `|<v1, v2>| <= |v1|^2 / 2` and is returned in well-oriented form.
pub fn reduce_basis(lat: &FlatTorusLattice) -> Result<FlatTorusLattice> {
    lat.check_degenerate()?;
    let (b1, b2) = gauss_reduce(lat.v1, lat.v2);
    FlatTorusLattice::from_generators(b1, b2)
}

fn gauss_reduce(mut b1: Vec2, mut b2: Vec2) -> (Vec2, Vec2) {
    if dot(b1, b1) > dot(b2, b2) {
        std::mem::swap(&mut b1, &mut b2);
    }
    // Terminates in O(log) steps; the bound guards against NaN input.
    for _ in 0..256 {
        let mu = (dot(b1, b2) / dot(b1, b1)).round();
        b2 = [b2[0] - mu * b1[0], b2[1] - mu * b1[1]];
        if dot(b2, b2) >= dot(b1, b1) {
            break;
        }
        std::mem::swap(&mut b1, &mut b2);
    }
    (b1, b2)
}

/// Length of the shortest nonzero lattice vector.
pub fn systole(lat: &FlatTorusLattice) -> Result<f64> {
    let r = reduce_basis(lat)?;
    Ok(norm(r.v1))
}

/// Covering radius of the lattice, which is the intrinsic diameter of the torus.
///
/// For a reduced basis with `<b1, b2> >= 0` the triangle `0, b1, b2` is
/// non-obtuse and tiles the plane together with its translates, so the deep
/// holes are its circumcenters and the covering radius is its circumradius.
pub fn diameter(lat: &FlatTorusLattice) -> Result<f64> {
    let r = reduce_basis(lat)?;
    let b1 = r.v1;
    let mut b2 = r.v2;
    if dot(b1, b2) < 0.0 {
        b2 = [-b2[0], -b2[1]];
    }
    let a = norm(b1);
    let b = norm(b2);
    let c = norm(sub(b2, b1));
    Ok(a * b * c / (2.0 * cross(b1, b2).abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literal_round_trip() {
        let l = FlatTorusLattice::parse_literal("2, 0.5, 3").unwrap();
        assert_eq!(l.coefficients(), (2.0, 0.5, 3.0));
        assert_eq!(FlatTorusLattice::parse_literal(&l.to_literal()).unwrap(), l);
        assert!(FlatTorusLattice::parse_literal("1,2").is_err());
        assert!(FlatTorusLattice::parse_literal("1,x,2").is_err());
    }

    #[test]
    fn degenerate_rejected() {
        assert!(matches!(
            FlatTorusLattice::new(1.0, 0.5, 0.0),
            Err(Error::DegenerateLattice { .. })
        ));
        assert!(FlatTorusLattice::from_generators([1.0, 1.0], [2.0, 2.0]).is_err());
        assert!(FlatTorusLattice::new(1.0, 0.0, 1e-13).is_err());
        assert!(FlatTorusLattice::new(1.0, 0.0, 1e-11).is_ok());
    }

    #[test]
    fn from_generators_normalizes() {
        let l = FlatTorusLattice::from_generators([0.0, 2.0], [1.0, 0.0]).unwrap();
        assert!((l.v1()[0] - 2.0).abs() < 1e-15);
        assert!(l.v2()[1] > 0.0);
        assert!((l.area() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn reduce_keeps_reduced_basis() {
        let sq = FlatTorusLattice::unit_square();
        assert_eq!(reduce_basis(&sq).unwrap(), sq);
    }

    #[test]
    fn nearly_parallel_pair_reduces_to_short_vector() {
        let l = FlatTorusLattice::new(1.0, 0.9, 0.1).unwrap();
        let r = reduce_basis(&l).unwrap();
        assert!((norm(r.v1()) - 0.02f64.sqrt()).abs() < 1e-12);
        assert!((r.area() - l.area()).abs() < 1e-12);
    }

    #[test]
    fn json_form() {
        let l = FlatTorusLattice::new(1.5, 0.25, 2.0).unwrap();
        let s = serde_json::to_string(&l).unwrap();
        assert_eq!(s, r#"{"v1":[1.5,0.0],"v2":[0.25,2.0]}"#);
        let back: FlatTorusLattice = serde_json::from_str(&s).unwrap();
        assert_eq!(back, l);
        assert!(serde_json::from_str::<FlatTorusLattice>(r#"{"v1":[1,0],"v2":[2,0]}"#).is_err());
    }

    #[test]
    fn diameter_closed_forms() {
        let d = diameter(&FlatTorusLattice::unit_square()).unwrap();
        assert!((d - 0.5f64.sqrt()).abs() < 1e-15);
        let d = diameter(&FlatTorusLattice::hexagonal()).unwrap();
        assert!((d - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        let d = diameter(&FlatTorusLattice::new(4.0, 0.0, 2.0).unwrap()).unwrap();
        assert!((d - 5f64.sqrt()).abs() < 1e-14);
    }
}
