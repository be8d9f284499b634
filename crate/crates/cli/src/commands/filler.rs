use cuspgeom::filler::{self, area_lower_bound, verify, FillerSpec};
use cuspgeom::lattice::{diameter, systole};
use cuspgeom::profile::Profile;
use cuspgeom::FlatTorusLattice;
use serde_json::json;
use std::io::Write;

use super::{emit, read_json, to_value, write_text, Outcome};
use crate::{Failure, FillerCommand, Global};

pub(crate) fn run(g: &Global, out: &mut dyn Write, c: &FillerCommand) -> Outcome {
    match c {
        FillerCommand::Build { l, lattice, out: path } => {
            let spec = filler::build(*l, FlatTorusLattice::parse_literal(lattice)?)?;
            let text = serde_json::to_string_pretty(&spec).expect("serializable") + "\n";
            write_text(path.as_deref(), &text, out)?;
            if let Some(p) = path {
                let v =
                    json!({ "L": spec.L(), "lattice": spec.lattice().to_literal(), "out": p.display().to_string() });
                emit(&v, g.json, out)?;
            }
            Ok(())
        }
        FillerCommand::Verify { file, grid, c } => {
            let spec: FillerSpec = read_json(file)?;
            let report = verify(&spec, *grid)?;
            let bound = area_lower_bound(&spec, *c)?;
            let v = json!({ "report": to_value(&report), "area_lower_bound": to_value(&bound) });
            emit(&v, g.json, out)?;
            if report.passed {
                Ok(())
            } else {
                Err(Failure::Verification(report.notes.join("; ")))
            }
        }
        FillerCommand::Export {
            file,
            samples,
            out: path,
        } => {
            let spec: FillerSpec = read_json(file)?;
            if *samples < 2 {
                return Err(Failure::Domain("export needs at least 2 samples".into()));
            }
            let f = spec.f();
            let top = spec.L() + 1.0;
            let mut s = String::from("# filler-levels v1\nt,f,systole,diameter,area\n");
            for i in 0..*samples {
                let t = top * i as f64 / *samples as f64;
                let lat = spec.level_lattice(t)?;
                s.push_str(&format!(
                    "{:.11e},{:.11e},{:.11e},{:.11e},{:.11e}\n",
                    t,
                    f.value(t),
                    systole(&lat)?,
                    diameter(&lat)?,
                    lat.area()
                ));
            }
            write_text(path.as_deref(), &s, out)
        }
    }
}
