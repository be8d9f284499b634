use cuspgeom::filler::{self, area_lower_bound, verify, FillerSpec};
use cuspgeom::lattice::{diameter, systole};
use cuspgeom::FlatTorusLattice;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn random_lattices(n: usize) -> Vec<FlatTorusLattice> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut out = Vec::new();
    while out.len() < n {
        let lat = FlatTorusLattice::new(
            rng.gen_range(0.1..3.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(0.1..3.0),
        )
        .unwrap();
        if systole(&lat).unwrap() / diameter(&lat).unwrap() >= 0.2 {
            out.push(lat);
        }
    }
    out
}

#[test]
fn diameters_decrease_for_random_lattices() {
    for lat in random_lattices(20) {
        let rep = verify(&filler::build(20.0, lat).unwrap(), 200).unwrap();
        assert!(rep.diameter_decreasing, "{lat:?}");
        assert!(rep.passed, "{lat:?}");
    }
}

#[test]
fn area_bound_is_monotone() {
    let mut prev = 0.0;
    for l in [10.5, 12.0, 20.0, 33.3, 80.0] {
        let b = area_lower_bound(&filler::build(l, FlatTorusLattice::unit_square()).unwrap(), PI).unwrap();
        assert!(b.bound >= prev);
        prev = b.bound;
    }
    let mut prev = 0.0;
    for s in [0.1, 0.5, 1.0, 1.5, 2.0, 3.0] {
        let spec = filler::build(20.0, FlatTorusLattice::new(s, 0.0, 3.0).unwrap()).unwrap();
        let b = area_lower_bound(&spec, PI).unwrap();
        assert!(b.bound >= prev);
        prev = b.bound;
    }
}

#[test]
fn level_tori_shrink_to_a_circle() {
    let spec = filler::build(15.0, FlatTorusLattice::hexagonal()).unwrap();
    let near = spec.level_lattice(16.0 - 1e-6).unwrap();
    assert!(near.v1()[0] < 1e-5);
    let far = spec.level_lattice(0.0).unwrap();
    assert_eq!(far, FlatTorusLattice::hexagonal());
}

#[test]
fn json_file_round_trip() {
    let spec = filler::build(20.0, FlatTorusLattice::new(1.0, 0.25, 0.9).unwrap()).unwrap();
    let text = serde_json::to_string_pretty(&spec).unwrap();
    let back: FillerSpec = serde_json::from_str(&text).unwrap();
    for t in [0.0, 3.7, 20.0, 20.5, 20.99] {
        assert_eq!(
            back.metric_at([0.0, 0.0, t]).unwrap(),
            spec.metric_at([0.0, 0.0, t]).unwrap()
        );
    }
}
