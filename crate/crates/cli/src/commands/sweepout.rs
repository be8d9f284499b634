use cuspgeom::sweepout::{fineness, profile, DiscreteFamily, ManifoldDescription};
use serde_json::json;
use std::io::Write;

use super::{emit, read_json, write_text, Outcome};
use crate::{Emit, Global, SweepoutCommand};

pub(crate) fn run(g: &Global, out: &mut dyn Write, c: &SweepoutCommand) -> Outcome {
    match c {
        SweepoutCommand::Profile {
            manifold,
            samples,
            emit: fmt,
            out: path,
        } => {
            let desc: ManifoldDescription = read_json(manifold)?;
            let p = profile(&desc, *samples)?;
            let fmt = fmt.unwrap_or(if g.json { Emit::Json } else { Emit::Csv });
            let text = match fmt {
                Emit::Csv => p.to_csv(),
                Emit::Json => serde_json::to_string_pretty(&p).expect("serializable") + "\n",
            };
            write_text(path.as_deref(), &text, out)?;
            if let Some(path) = path {
                let v = json!({
                    "samples": p.samples().len(),
                    "width_upper_bound": p.width_upper_bound(),
                    "out": path.display().to_string(),
                });
                emit(&v, g.json, out)?;
            }
            Ok(())
        }
        SweepoutCommand::Fineness { family } => {
            let fam: DiscreteFamily = read_json(family)?;
            let v = json!({
                "level": fam.level(),
                "currents": fam.currents().len(),
                "relative": fam.is_relative(),
                "fineness": fineness(&fam)?,
                "max_mass": fam.max_mass(),
            });
            emit(&v, g.json, out)
        }
    }
}
