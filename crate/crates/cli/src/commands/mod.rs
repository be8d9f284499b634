mod bounds;
mod filler;
mod geometry;
mod graph;
mod sweepout;

use serde::de::DeserializeOwned;
use serde_json::Value;
use std::io::Write;
use std::path::Path;

use crate::{output, Cli, Command, Failure};

pub(crate) type Outcome = Result<(), Failure>;

pub(crate) fn dispatch(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let g = &cli.global;
    match &cli.command {
        Command::Tube { length, twist, radius } => geometry::tube(g, out, *length, *twist, *radius),
        Command::Meyerhoff { length } => geometry::meyerhoff(g, out, *length),
        Command::Lattice { lattice, random } => geometry::lattice(g, out, lattice.as_deref(), *random),
        Command::Graph(c) => graph::run(g, out, c),
        Command::Filler(c) => filler::run(g, out, c),
        Command::Bounds(c) => bounds::run(g, out, c),
        Command::Sweepout(c) => sweepout::run(g, out, c),
    }
}

pub(crate) fn emit(v: &Value, json: bool, out: &mut dyn Write) -> Outcome {
    output::emit(v, json, out)?;
    Ok(())
}

pub(crate) fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
}

/// Writes `text` to `path`, or to `out` when there is no path.
pub(crate) fn write_text(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Outcome {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Domain(format!("{}: {e}", p.display()))),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

pub(crate) fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}
