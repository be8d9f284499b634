use cuspgeom::lattice::{diameter, reduce_basis, systole};
use cuspgeom::tube::{
    boundary_lattice, ell_max, meyerhoff_radius, meyerhoff_radius_root_solve, slice_area, slice_mean_curvature,
    TubeParams,
};
use cuspgeom::FlatTorusLattice;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::io::Write;

use super::{emit, Outcome};
use crate::{Failure, Global};

pub(crate) fn tube(g: &Global, out: &mut dyn Write, length: f64, twist: f64, radius: Option<f64>) -> Outcome {
    let r_ell = meyerhoff_radius(length)?;
    let p = match radius {
        Some(r) => TubeParams::new(length, twist, r)?,
        None => TubeParams::meyerhoff(length, twist)?,
    };
    let lat = boundary_lattice(&p, p.radius)?;
    let v = json!({
        "length": length,
        "twist": twist,
        "meyerhoff_radius": r_ell,
        "radius": p.radius,
        "embedded": p.is_embedded(),
        "boundary_lattice": lat.to_literal(),
        "systole": systole(&lat)?,
        "diameter": diameter(&lat)?,
        "slice_area": slice_area(length, p.radius)?,
        "mean_curvature": slice_mean_curvature(p.radius)?,
    });
    emit(&v, g.json, out)
}

pub(crate) fn meyerhoff(g: &Global, out: &mut dyn Write, length: f64) -> Outcome {
    let r = meyerhoff_radius(length)?;
    let v = json!({
        "length": length,
        "radius": r,
        "radius_root_solve": meyerhoff_radius_root_solve(length)?,
        "ell_max": ell_max(),
        "boundary_area": slice_area(length, r)?,
    });
    emit(&v, g.json, out)
}

fn summary(lat: &FlatTorusLattice) -> Result<Value, Failure> {
    let red = reduce_basis(lat)?;
    Ok(json!({
        "lattice": lat.to_literal(),
        "reduced": red.to_literal(),
        "area": lat.area(),
        "systole": systole(lat)?,
        "diameter": diameter(lat)?,
    }))
}

pub(crate) fn lattice(g: &Global, out: &mut dyn Write, literal: Option<&str>, random: Option<usize>) -> Outcome {
    let v = match (literal, random) {
        (Some(s), _) => summary(&FlatTorusLattice::parse_literal(s)?)?,
        (None, Some(n)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
            let mut items = Vec::with_capacity(n);
            for _ in 0..n {
                let lat = FlatTorusLattice::new(
                    rng.gen_range(0.1..3.0),
                    rng.gen_range(-2.0..2.0),
                    rng.gen_range(0.1..3.0),
                )?;
                items.push(summary(&lat)?);
            }
            json!({ "seed": g.seed, "lattices": items })
        }
        (None, None) => return Err(Failure::Domain("give --lattice a1,a2,b2 or --random N".into())),
    };
    emit(&v, g.json, out)
}
