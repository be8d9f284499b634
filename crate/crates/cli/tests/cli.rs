use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn cuspgeom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cuspgeom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    let o = cuspgeom(&a);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(key).filter(|r| r.starts_with(' ')).map(str::trim))
        .unwrap_or_else(|| panic!("no {key} in\n{text}"))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn exit_codes() {
    assert_eq!(cuspgeom(&["meyerhoff", "--length", "0.01"]).status.code(), Some(0));
    assert_eq!(cuspgeom(&["filler", "build", "--L", "5"]).status.code(), Some(2));
    assert_eq!(cuspgeom(&["bounds", "disk", "--R=-1"]).status.code(), Some(2));
    assert_eq!(cuspgeom(&["bounds", "disk", "--radius", "1"]).status.code(), Some(64));
    assert_eq!(cuspgeom(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(
        cuspgeom(&["--tol", "-1", "meyerhoff", "--length", "0.01"])
            .status
            .code(),
        Some(64)
    );
    let help = cuspgeom(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(stdout(&help).contains("sweepout"));
}

#[test]
fn human_output_has_twelve_digits() {
    let m = stdout(&cuspgeom(&["meyerhoff", "--length", "0.01"]));
    assert_eq!(field(&m, "radius"), "1.98272416307");
    assert_eq!(field(&stdout(&cuspgeom(&["bounds", "disk", "--R", "0"])), "area"), "0");
    assert_eq!(
        field(&stdout(&cuspgeom(&["bounds", "disk", "--R", "2"])), "area"),
        "17.3553873818"
    );
}

#[test]
fn json_output_carries_full_precision() {
    let v = json(&["bounds", "crossing", "--R", "3", "--RL", "3", "--sys", "0.01"]);
    let lib =
        cuspgeom::bounds::crossing_lower_bound(3.0, 3.0, 0.01, cuspgeom::bounds::CrossingConstants::new(1.0).unwrap())
            .unwrap();
    assert_eq!(v["area"].as_f64().unwrap(), lib.chain);
    let b = json(&[
        "bounds", "band", "--rho1", "0.5", "--rho2", "1.5", "--sys", "0.2", "--RL", "4",
    ]);
    assert!(b["area"].as_f64().unwrap() > 0.0);
    let m = json(&["bounds", "margulis"]);
    assert_eq!(m["eps"].as_f64(), Some(0.104));
    let t = json(&["tube", "--length", "0.01", "--radius", "2.5"]);
    assert_eq!(t["embedded"], Value::Bool(false));
    let p = json(&["bounds", "projection", "--length", "0.01", "--radii", "0.5,1,1.9"]);
    assert!(p["max_singular_value"].as_f64().unwrap() <= 1.0 + 1e-12);
}

#[test]
fn filler_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("filler.json");
    let p = path.to_str().unwrap();
    let built = cuspgeom(&["filler", "build", "--L", "20", "--lattice", "1,0,1", "--out", p]);
    assert!(built.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let spec: cuspgeom::filler::FillerSpec = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&spec).unwrap() + "\n", text);

    let v = json(&["filler", "verify", p]);
    assert_eq!(v["report"]["passed"], Value::Bool(true));
    let bound = v["area_lower_bound"]["bound"].as_f64().unwrap();
    assert!((bound - 0.352372).abs() < 1e-6, "{bound}");
    assert_eq!(json(&["filler", "verify", p]), v);

    let csv = stdout(&cuspgeom(&["filler", "export", p, "--samples", "21"]));
    assert!(csv.starts_with("# filler-levels v1\nt,f,systole,diameter,area\n"));
    assert_eq!(csv.lines().count(), 23);

    let bad = write(dir.path(), "bad.json", &text.replacen('{', "{\"extra\": 1,", 1));
    assert_eq!(cuspgeom(&["filler", "verify", &bad]).status.code(), Some(2));
    let missing = dir.path().join("none.json");
    assert_eq!(
        cuspgeom(&["filler", "verify", missing.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

fn read_grid(path: &Path) -> (usize, usize, Vec<f64>) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("# graph-solution v1 "));
    let dims: Vec<usize> = header
        .split(' ')
        .filter_map(|w| w.split_once('='))
        .map(|(_, n)| n.parse().unwrap())
        .collect();
    let vals: Vec<f64> = lines
        .flat_map(|l| l.split(',').map(|x| x.parse::<f64>().unwrap()).collect::<Vec<_>>())
        .collect();
    (dims[0], dims[1], vals)
}

#[test]
fn graph_solve_reproduces_affine_data_in_flat_space() {
    let dir = tempfile::tempdir().unwrap();
    let metric = write(
        dir.path(),
        "m.json",
        r#"{"kind":"flat","lattice":{"v1":[1,0],"v2":[0,1]},"interval":[-5,5]}"#,
    );
    let bc = write(
        dir.path(),
        "bc.json",
        r#"{"size":[2,1],"value":{"affine":[0.5,0.25,-0.75]}}"#,
    );
    let out = dir.path().join("u.csv");
    let o = cuspgeom(&[
        "graph",
        "solve",
        "--metric",
        &metric,
        "--domain",
        "rect",
        "--grid",
        "9x6",
        "--bc",
        &bc,
        "--out",
        out.to_str().unwrap(),
        "--tol",
        "1e-12",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let (n1, n2, vals) = read_grid(&out);
    assert_eq!((n1, n2, vals.len()), (9, 6, 54));
    for (k, v) in vals.iter().enumerate() {
        let (x, y) = (2.0 * (k % n1) as f64 / 8.0, (k / n1) as f64 / 5.0);
        assert!((v - (0.5 + 0.25 * x - 0.75 * y)).abs() < 1e-10);
    }
}

#[test]
fn graph_solve_on_a_torus() {
    let dir = tempfile::tempdir().unwrap();
    let metric = write(
        dir.path(),
        "m.json",
        r#"{"kind":"cusp","lattice":{"v1":[1,0],"v2":[0.5,0.9]},"interval":[0,3]}"#,
    );
    let out = dir.path().join("u.csv");
    let o = cuspgeom(&[
        "graph",
        "solve",
        "--metric",
        &metric,
        "--grid",
        "8x8",
        "--out",
        out.to_str().unwrap(),
    ]);
    // Constant graphs in a cusp have H = 1: there is no minimal one.
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
    let sloped = write(dir.path(), "bc.json", r#"{"value":{"affine":[1,1,0]}}"#);
    let o = cuspgeom(&[
        "graph",
        "solve",
        "--metric",
        &metric,
        "--bc",
        &sloped,
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));

    let flat = write(
        dir.path(),
        "f.json",
        r#"{"kind":"flat","lattice":{"v1":[1,0],"v2":[0.5,0.9]},"interval":[0,3]}"#,
    );
    let v = json(&[
        "graph",
        "solve",
        "--metric",
        &flat,
        "--grid",
        "8x8",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(v["iterations"].as_u64(), Some(0));
    assert!((v["area"].as_f64().unwrap() - 0.9).abs() < 1e-12);
    let h = json(&["graph", "hypotheses", "--metric", &metric]);
    assert_eq!(h["mean_convex"], Value::Bool(true));
}

#[test]
fn sweepout_commands() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(
        dir.path(),
        "m.json",
        r#"{"cusps":[{"lattice":{"v1":[1,0],"v2":[0,1]},"depth":[0,2]}],"tubes":[{"length":0.01,"radius":"meyerhoff"}],"fillers":[]}"#,
    );
    let csv = stdout(&cuspgeom(&["sweepout", "profile", "--manifold", &m, "--samples", "10"]));
    assert!(csv.starts_with("# sweepout-profile v1\nt,part,local,area\n"));
    assert_eq!(csv.lines().count(), 22);
    let p = json(&["sweepout", "profile", "--manifold", &m, "--samples", "10"]);
    assert_eq!(p["width_upper_bound"].as_f64(), Some(1.0));
    let out = dir.path().join("p.json");
    let s = json(&[
        "sweepout",
        "profile",
        "--manifold",
        &m,
        "--emit",
        "json",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(s["samples"].as_u64(), Some(200));

    let fam = write(
        dir.path(),
        "fam.json",
        r#"{"level":1,"currents":[[],[{"patch":"T","multiplicity":1,"area":0.5}],[{"patch":"T","multiplicity":2,"area":0.5}],[]]}"#,
    );
    let f = json(&["sweepout", "fineness", "--family", &fam]);
    assert_eq!(f["fineness"].as_f64(), Some(1.0));
    assert_eq!(f["max_mass"].as_f64(), Some(1.0));
    assert_eq!(f["relative"], Value::Bool(true));
}

#[test]
fn random_lattices_follow_the_seed() {
    let a = stdout(&cuspgeom(&["lattice", "--random", "3", "--seed", "7"]));
    assert_eq!(a, stdout(&cuspgeom(&["lattice", "--random", "3", "--seed", "7"])));
    assert_ne!(a, stdout(&cuspgeom(&["lattice", "--random", "3", "--seed", "8"])));
    let one = json(&["lattice", "--lattice", "22.3835,11.1918,0.0370"]);
    assert!((one["systole"].as_f64().unwrap() - 0.0001f64.hypot(0.074)).abs() < 1e-12);
    assert_eq!(cuspgeom(&["lattice"]).status.code(), Some(2));
}
