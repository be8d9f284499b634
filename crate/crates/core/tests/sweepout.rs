use cuspgeom::sweepout::*;
use cuspgeom::tube::meyerhoff_radius;
use cuspgeom::FlatTorusLattice;

fn all_2d(level: u32) -> Vec<Vertex> {
    let n = 3u64.pow(level);
    (0..=n)
        .flat_map(|a| (0..=n).map(move |b| Vertex::new(level, vec![a, b]).unwrap()))
        .collect()
}

#[test]
fn two_dimensional_metric_is_exhaustively_a_metric() {
    for j in 0..=2 {
        let vs = all_2d(j);
        for x in &vs {
            for y in &vs {
                let dxy = grid_distance(x, y).unwrap();
                assert_eq!(dxy == 0, x == y);
                for z in &vs {
                    assert!(grid_distance(x, z).unwrap() <= dxy + grid_distance(y, z).unwrap());
                }
            }
        }
    }
}

#[test]
fn projection_is_nearest_and_composes() {
    for i in 0..=4u32 {
        for x in vertices(i).unwrap() {
            for j in 0..=i {
                let p = project_vertex(&x, j).unwrap();
                let fine = Vertex::new(i, vec![p.coords[0] * 3u64.pow(i - j)]).unwrap();
                let best = vertices(j)
                    .unwrap()
                    .iter()
                    .map(|y| grid_distance(&x, &Vertex::new(i, vec![y.coords[0] * 3u64.pow(i - j)]).unwrap()).unwrap())
                    .min()
                    .unwrap();
                assert_eq!(grid_distance(&x, &fine).unwrap(), best);
                for k in 0..=j {
                    assert_eq!(project_vertex(&p, k).unwrap(), project_vertex(&x, k).unwrap());
                }
            }
        }
    }
    let p2 = project_vertex(&Vertex::new(2, vec![4, 5]).unwrap(), 1).unwrap();
    assert_eq!(p2.coords, vec![1, 2]);
}

#[test]
fn fineness_decays_like_one_over_k() {
    let a = FormalCurrent::new([("T1", 1, 0.4), ("S", 2, 0.1)]).unwrap();
    let b = FormalCurrent::new([("T2", 1, 0.7), ("S", -1, 0.1)]).unwrap();
    let total = a.mass_of_difference(&b).unwrap();
    for k in [4usize, 16, 64, 256] {
        let fam = DiscreteFamily::from_chain(interpolate_patches(&a, &b, k).unwrap()).unwrap();
        assert!(3usize.pow(fam.level()) >= k);
        let f = fineness(&fam).unwrap();
        assert!((f - total / k as f64).abs() <= 1e-12 * total);
    }
}

#[test]
fn relative_families_start_and_end_at_zero() {
    let t = FormalCurrent::single("T", 1.0).unwrap();
    let mut chain = interpolate_patches(&FormalCurrent::zero(), &t, 4).unwrap();
    chain.extend(
        interpolate_patches(&t, &FormalCurrent::zero(), 4)
            .unwrap()
            .into_iter()
            .skip(1),
    );
    let fam = DiscreteFamily::from_chain(chain).unwrap();
    assert!(fam.is_relative());
    assert_eq!(max_mass(&fam), 1.0);
}

#[test]
fn manifold_profile_from_json() {
    let text = r#"{
        "cusps": [{"lattice": {"v1": [1.0, 0.0], "v2": [0.5, 0.8660254037844386]}, "depth": [0.0, 2.0]}],
        "tubes": [{"length": 0.01, "radius": "meyerhoff"}],
        "fillers": [{"cusp": 0, "L": 12.0}]
    }"#;
    let desc: ManifoldDescription = serde_json::from_str(text).unwrap();
    let p = profile(&desc, 50).unwrap();
    assert_eq!(p.samples().len(), 150);
    assert!(p.samples().windows(2).all(|w| w[1].t > w[0].t));
    let hex_area = FlatTorusLattice::hexagonal().area();
    assert!((p.width_upper_bound() - hex_area).abs() < 1e-12);
    let tube_top = p.samples().last().unwrap();
    let r = meyerhoff_radius(0.01).unwrap();
    assert_eq!(tube_top.local, r);
    let csv = p.to_csv();
    assert!(csv.starts_with("# sweepout-profile v1\nt,part,local,area\n"));
    assert_eq!(csv.lines().count(), 152);
}
