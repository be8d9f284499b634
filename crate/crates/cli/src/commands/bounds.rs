use cuspgeom::bounds::*;
use serde_json::json;
use std::io::Write;

use super::{emit, to_value, Outcome};
use crate::{BoundsCommand, Failure, Global};

pub(crate) fn run(g: &Global, out: &mut dyn Write, c: &BoundsCommand) -> Outcome {
    let v = match *c {
        BoundsCommand::Disk { r } => json!({ "R": r, "area": parallel_disk_area(r)? }),
        BoundsCommand::Band { rho1, rho2, sys, rl } => {
            let e = BandEstimate::new(rho1, rho2, sys, rl)?;
            let b = annulus_band_bound(&e);
            json!({ "estimate": to_value(&e), "area": b.closed_form, "intermediate": b.intermediate })
        }
        BoundsCommand::Crossing { r, rl, sys, kpp } => {
            let b = crossing_lower_bound(r, rl, sys, CrossingConstants::new(kpp)?)?;
            json!({ "R": r, "RL": rl, "sys": sys, "area": b.chain, "simplified": b.simplified, "constants": to_value(&b.constants) })
        }
        BoundsCommand::Margulis { eps } => json!({ "eps": eps, "area": margulis_area_bound(eps)? }),
        BoundsCommand::Euler { chi } => json!({ "chi": chi, "area": euler_area_bound(chi)? }),
        BoundsCommand::Projection {
            length,
            ref radii,
            z_samples,
        } => {
            let rep = projection_contraction_check(length, radii, z_samples)?;
            emit(&to_value(&rep), g.json, out)?;
            if !rep.contraction {
                return Err(Failure::Verification(format!(
                    "largest singular value {}",
                    rep.max_singular_value
                )));
            }
            return Ok(());
        }
    };
    emit(&v, g.json, out)
}
