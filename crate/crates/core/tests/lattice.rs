mod common;

use cuspgeom::lattice::{diameter, reduce_basis, systole};
use cuspgeom::FlatTorusLattice;
use proptest::prelude::*;

fn lattice() -> impl Strategy<Value = FlatTorusLattice> {
    (0.2f64..3.0, -3.0f64..3.0, 0.2f64..3.0).prop_map(|(a, b, c)| FlatTorusLattice::new(a, b, c).unwrap())
}

fn norm(v: [f64; 2]) -> f64 {
    v[0].hypot(v[1])
}

proptest! {
    #[test]
    fn reduced_vectors_are_shorter_than_twice_the_diameter(lat in lattice()) {
        let r = reduce_basis(&lat).unwrap();
        let d = diameter(&lat).unwrap();
        prop_assert!(norm(r.v1()) <= 2.0 * d && norm(r.v2()) <= 2.0 * d);
        prop_assert!(systole(&lat).unwrap() <= 2.0 * d);
    }

    #[test]
    fn systole_matches_brute_force(lat in lattice()) {
        let b = common::brute_force_systole(lat.v1(), lat.v2(), 60);
        prop_assert!((systole(&lat).unwrap() - b).abs() <= 1e-12 * b);
    }

    #[test]
    fn invariant_under_rotation_and_reduction(lat in lattice(), angle in 0.0f64..6.3, lambda in 0.1f64..10.0) {
        let rot = |v: [f64; 2]| [angle.cos() * v[0] - angle.sin() * v[1], angle.sin() * v[0] + angle.cos() * v[1]];
        let turned = FlatTorusLattice::from_generators(rot(lat.v1()), rot(lat.v2())).unwrap();
        let red = reduce_basis(&lat).unwrap();
        let (s, d) = (systole(&lat).unwrap(), diameter(&lat).unwrap());
        for other in [turned, red] {
            prop_assert!((systole(&other).unwrap() - s).abs() <= 1e-12 * s);
            prop_assert!((diameter(&other).unwrap() - d).abs() <= 1e-11 * d);
        }
        let scaled = lat.scaled(lambda).unwrap();
        prop_assert!((systole(&scaled).unwrap() - lambda * s).abs() <= 1e-12 * lambda * s);
        prop_assert!((diameter(&scaled).unwrap() - lambda * d).abs() <= 1e-11 * lambda * d);
    }

    #[test]
    fn reduced_basis_conditions(lat in lattice()) {
        let r = reduce_basis(&lat).unwrap();
        let (v1, v2) = (r.v1(), r.v2());
        prop_assert!(norm(v1) <= norm(v2) * (1.0 + 1e-12));
        prop_assert!((v1[0] * v2[0] + v1[1] * v2[1]).abs() <= 0.5 * norm(v1).powi(2) * (1.0 + 1e-12));
        prop_assert!((r.area() - lat.area()).abs() <= 1e-12 * lat.area());
    }
}

#[test]
fn diameter_against_sampling() {
    for lat in [
        FlatTorusLattice::unit_square(),
        FlatTorusLattice::hexagonal(),
        FlatTorusLattice::new(4.0, 0.0, 2.0).unwrap(),
        FlatTorusLattice::new(1.0, 0.9, 0.1).unwrap(),
        FlatTorusLattice::new(0.7, -2.3, 1.3).unwrap(),
    ] {
        let d = diameter(&lat).unwrap();
        let s = common::sampled_covering_radius(lat.v1(), lat.v2(), 300);
        assert!(s <= d * (1.0 + 1e-12), "{lat:?}: sampled {s} above {d}");
        assert!(s >= d * (1.0 - 2e-2), "{lat:?}: sampled {s} far below {d}");
    }
}

#[test]
fn tube_sized_lattices() {
    let lat = FlatTorusLattice::new(22.3835, 11.1918, 0.0370).unwrap();
    let r = reduce_basis(&lat).unwrap();
    // 2 v2 − v1 = (0.0001, 0.074); v2 − v1/2 is not a lattice vector.
    assert!((norm(r.v1()) - 0.0001f64.hypot(0.074)).abs() < 1e-12);
    let b = common::brute_force_systole(lat.v1(), lat.v2(), 1000);
    assert!((systole(&lat).unwrap() - b).abs() <= 1e-12 * b);
}
