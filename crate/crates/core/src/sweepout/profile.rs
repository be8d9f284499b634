use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::filler::{self, FillerSpec};
use crate::lattice::FlatTorusLattice;
use crate::tube::{meyerhoff_radius, slice_area, CuspParams, TubeParams};

/// Relative tolerance when matching a filler to the torus it is glued to.
pub const GLUING_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CuspEnd {
    pub lattice: FlatTorusLattice,
    /// `[t0, t1]`; the slice at depth `t` has area `e^{-2t} |T|`.
    pub depth: (f64, f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RadiusKeyword {
    Meyerhoff,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TubeRadius {
    Value(f64),
    Named(RadiusKeyword),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TubeEnd {
    pub length: f64,
    #[serde(default)]
    pub twist: f64,
    pub radius: TubeRadius,
}

impl TubeEnd {
    pub fn params(&self) -> Result<TubeParams> {
        match self.radius {
            TubeRadius::Value(r) => TubeParams::new(self.length, self.twist, r),
            TubeRadius::Named(RadiusKeyword::Meyerhoff) => TubeParams::meyerhoff(self.length, self.twist),
        }
    }
}

/// A filler glued to the deep end of cusp `cusp`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FillerAttachment {
    pub cusp: usize,
    #[serde(rename = "L")]
    pub l: f64,
    /// Defaults to the cusp torus at the deep end; if given it must match it.
    #[serde(default)]
    pub lattice: Option<FlatTorusLattice>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifoldDescription {
    #[serde(default)]
    pub cusps: Vec<CuspEnd>,
    #[serde(default)]
    pub tubes: Vec<TubeEnd>,
    #[serde(default)]
    pub fillers: Vec<FillerAttachment>,
}

fn lattices_match(a: &FlatTorusLattice, b: &FlatTorusLattice) -> bool {
    let (a1, a2, a3) = a.coefficients();
    let (b1, b2, b3) = b.coefficients();
    let scale = a1.abs().max(a2.abs()).max(a3.abs());
    [(a1, b1), (a2, b2), (a3, b3)]
        .iter()
        .all(|(x, y)| (x - y).abs() <= GLUING_TOLERANCE * scale)
}

impl ManifoldDescription {
    /// Validates every end and resolves the fillers.
    pub fn resolve(&self) -> Result<ResolvedManifold> {
        if self.cusps.is_empty() && self.tubes.is_empty() {
            return domain("manifold description has no ends");
        }
        let cusps = self
            .cusps
            .iter()
            .map(|c| CuspParams::new(c.lattice, c.depth))
            .collect::<Result<Vec<_>>>()?;
        let tubes = self.tubes.iter().map(TubeEnd::params).collect::<Result<Vec<_>>>()?;
        let mut fillers = Vec::new();
        let mut used = vec![false; cusps.len()];
        for (k, f) in self.fillers.iter().enumerate() {
            let Some(c) = cusps.get(f.cusp) else {
                return Err(Error::Gluing(format!("filler {k} refers to missing cusp {}", f.cusp)));
            };
            if std::mem::replace(&mut used[f.cusp], true) {
                return Err(Error::Gluing(format!("cusp {} carries two fillers", f.cusp)));
            }
            let boundary = c.level_lattice(c.depth.1)?;
            let lattice = match f.lattice {
                Some(l) if !lattices_match(&l, &boundary) => {
                    return Err(Error::Gluing(format!(
                        "filler {k} lattice {} does not match cusp {} boundary {}",
                        l.to_literal(),
                        f.cusp,
                        boundary.to_literal()
                    )));
                }
                Some(l) => l,
                None => boundary,
            };
            fillers.push(filler::build(f.l, lattice)?);
        }
        Ok(ResolvedManifold { cusps, tubes, fillers })
    }
}

#[derive(Debug, Clone)]
pub struct ResolvedManifold {
    pub cusps: Vec<CuspParams>,
    pub tubes: Vec<TubeParams>,
    pub fillers: Vec<FillerSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProfileSample {
    /// Global sweep parameter, strictly increasing along the profile.
    pub t: f64,
    /// `filler`, `cusp[k]` or `tube[k]`.
    pub part: String,
    /// Parameter of the part: filler level, cusp depth or tube radius.
    pub local: f64,
    pub area: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepoutProfile {
    samples: Vec<ProfileSample>,
    width_upper_bound: f64,
}

impl SweepoutProfile {
    pub fn new(samples: Vec<ProfileSample>) -> Result<Self> {
        if samples.is_empty() {
            return domain("empty profile");
        }
        if let Some(s) = samples.iter().find(|s| !(s.area >= 0.0) || !s.t.is_finite()) {
            return domain(format!("invalid sample at t = {} (area {})", s.t, s.area));
        }
        if samples.windows(2).any(|w| !(w[1].t > w[0].t)) {
            return domain("profile parameter must be strictly increasing");
        }
        let width_upper_bound = samples.iter().map(|s| s.area).fold(0.0, f64::max);
        Ok(Self {
            samples,
            width_upper_bound,
        })
    }

    /// Lays the parts end to end, each shifted to start one unit after the
    /// previous one ends.
    pub fn concat(parts: Vec<SweepoutProfile>) -> Result<Self> {
        let mut out: Vec<ProfileSample> = Vec::new();
        for p in parts {
            let shift = match out.last() {
                Some(last) => last.t + 1.0 - p.samples[0].t,
                None => 0.0,
            };
            out.extend(p.samples.into_iter().map(|s| ProfileSample { t: s.t + shift, ..s }));
        }
        Self::new(out)
    }

    pub fn samples(&self) -> &[ProfileSample] {
        &self.samples
    }

    /// Largest sampled area, an upper bound for the width along this
    /// sweep-out up to sampling.
    pub fn width_upper_bound(&self) -> f64 {
        self.width_upper_bound
    }

    /// `t,part,local,area` rows under a versioned header.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("# sweepout-profile v1\nt,part,local,area\n");
        for p in &self.samples {
            s.push_str(&format!("{:.11e},{},{:.11e},{:.11e}\n", p.t, p.part, p.local, p.area));
        }
        s
    }
}

/// Things with a largest mass.
pub trait MaxMass {
    fn max_mass(&self) -> f64;
}

impl MaxMass for SweepoutProfile {
    fn max_mass(&self) -> f64 {
        self.width_upper_bound
    }
}

impl MaxMass for super::DiscreteFamily {
    fn max_mass(&self) -> f64 {
        super::DiscreteFamily::max_mass(self)
    }
}

pub fn max_mass(x: &impl MaxMass) -> f64 {
    x.max_mass()
}

fn grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| {
        if i + 1 == n {
            hi
        } else {
            lo + (hi - lo) * i as f64 / (n - 1) as f64
        }
    })
}

/// Slices `e^{-2t}|T|` of a cusp over its depth range.
pub fn cusp_profile(c: &CuspParams, samples: usize, name: &str) -> Result<SweepoutProfile> {
    if samples < 2 {
        return domain("profiles need at least 2 samples per part");
    }
    let a = c.lattice.area();
    SweepoutProfile::new(
        grid(c.depth.0, c.depth.1, samples)
            .map(|t| ProfileSample {
                t,
                part: name.into(),
                local: t,
                area: (-2.0 * t).exp() * a,
            })
            .collect(),
    )
}

/// Slices `S_r`, `0 ≤ r ≤ R`, of a tube.
pub fn tube_profile(p: &TubeParams, samples: usize, name: &str) -> Result<SweepoutProfile> {
    if samples < 2 {
        return domain("profiles need at least 2 samples per part");
    }
    SweepoutProfile::new(
        grid(0.0, p.radius, samples)
            .map(|r| {
                Ok(ProfileSample {
                    t: r,
                    part: name.into(),
                    local: r,
                    area: slice_area(p.length, r)?,
                })
            })
            .collect::<Result<_>>()?,
    )
}

/// `Γ̃_t = ∪ ∂F_{−t}` for `t ∈ (−L−1, 0]`, all fillers swept together; a
/// filler contributes nothing once `−t` passes its core.
pub fn filler_profile(fillers: &[FillerSpec], samples: usize) -> Result<SweepoutProfile> {
    if samples < 2 {
        return domain("profiles need at least 2 samples per part");
    }
    let top = fillers.iter().map(|f| f.L() + 1.0).fold(0.0, f64::max);
    if fillers.is_empty() {
        return domain("no fillers");
    }
    let mut out = Vec::with_capacity(samples);
    for k in 1..=samples {
        let s = if k == samples {
            0.0
        } else {
            top * (1.0 - k as f64 / samples as f64)
        };
        let mut area = 0.0;
        for f in fillers {
            if s < f.L() + 1.0 {
                area += f.level_lattice(s)?.area();
            }
        }
        out.push(ProfileSample {
            t: -s,
            part: "filler".into(),
            local: s,
            area,
        });
    }
    SweepoutProfile::new(out)
}

/// The concatenated profile of a manifold description: the filler sweep
/// (if any), then each cusp, then each tube, `samples` points per part.
pub fn profile(desc: &ManifoldDescription, samples: usize) -> Result<SweepoutProfile> {
    let m = desc.resolve()?;
    let mut parts = Vec::new();
    if !m.fillers.is_empty() {
        parts.push(filler_profile(&m.fillers, samples)?);
    }
    for (k, c) in m.cusps.iter().enumerate() {
        parts.push(cusp_profile(c, samples, &format!("cusp[{k}]"))?);
    }
    for (k, t) in m.tubes.iter().enumerate() {
        parts.push(tube_profile(t, samples, &format!("tube[{k}]"))?);
    }
    SweepoutProfile::concat(parts)
}

/// `R_ℓ` for a tube end given by length only.
pub fn meyerhoff_tube(length: f64, twist: f64) -> Result<TubeEnd> {
    meyerhoff_radius(length)?;
    Ok(TubeEnd {
        length,
        twist,
        radius: TubeRadius::Named(RadiusKeyword::Meyerhoff),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_cusp(depth: (f64, f64)) -> CuspEnd {
        CuspEnd {
            lattice: FlatTorusLattice::unit_square(),
            depth,
        }
    }

    #[test]
    fn pure_cusp() {
        let d = ManifoldDescription {
            cusps: vec![unit_cusp((0.0, 4.0))],
            ..Default::default()
        };
        let p = profile(&d, 100).unwrap();
        assert_eq!(p.samples()[0].t, 0.0);
        assert_eq!(p.max_mass(), 1.0);
        assert!(p.samples().windows(2).all(|w| w[1].area < w[0].area));
    }

    #[test]
    fn meyerhoff_tube_profile() {
        let d = ManifoldDescription {
            tubes: vec![meyerhoff_tube(0.01, 0.0).unwrap()],
            ..Default::default()
        };
        let p = profile(&d, 64).unwrap();
        let r = meyerhoff_radius(0.01).unwrap();
        assert_eq!(p.max_mass(), slice_area(0.01, r).unwrap());
        assert!((p.max_mass() - 0.8283).abs() < 1e-4);
        assert_eq!(p.samples().last().unwrap().area, p.max_mass());
    }

    #[test]
    fn filler_extension_stays_below_boundary() {
        let d = ManifoldDescription {
            cusps: vec![unit_cusp((0.0, 1.0)), unit_cusp((0.0, 2.0))],
            fillers: vec![
                FillerAttachment {
                    cusp: 0,
                    l: 20.0,
                    lattice: None,
                },
                FillerAttachment {
                    cusp: 1,
                    l: 15.0,
                    lattice: None,
                },
            ],
            ..Default::default()
        };
        let p = profile(&d, 200).unwrap();
        let filler: Vec<_> = p.samples().iter().filter(|s| s.part == "filler").collect();
        let boundary = (-2.0f64).exp() + (-4.0f64).exp();
        let last = filler.last().unwrap();
        assert_eq!(last.local, 0.0);
        assert!((last.area - boundary).abs() < 1e-15);
        assert!(filler.iter().all(|s| s.area <= last.area));
        assert!(p.samples().windows(2).all(|w| w[1].t > w[0].t));
    }

    #[test]
    fn gluing_errors() {
        let mut d = ManifoldDescription {
            cusps: vec![unit_cusp((0.0, 1.0))],
            fillers: vec![FillerAttachment {
                cusp: 0,
                l: 20.0,
                lattice: Some(FlatTorusLattice::unit_square()),
            }],
            ..Default::default()
        };
        assert!(matches!(d.resolve(), Err(Error::Gluing(_))));
        let e = (-1.0f64).exp();
        d.fillers[0].lattice = Some(FlatTorusLattice::new(e * (1.0 + 1e-9), 0.0, e).unwrap());
        assert!(d.resolve().is_ok());
        d.fillers[0].cusp = 3;
        assert!(matches!(d.resolve(), Err(Error::Gluing(_))));
        assert!(ManifoldDescription::default().resolve().is_err());
    }

    #[test]
    fn concatenation_max() {
        let c = CuspParams::new(FlatTorusLattice::hexagonal(), (0.5, 2.0)).unwrap();
        let t = TubeParams::new(0.05, 0.3, 1.0).unwrap();
        let (a, b) = (cusp_profile(&c, 10, "c").unwrap(), tube_profile(&t, 10, "t").unwrap());
        let joined = SweepoutProfile::concat(vec![a.clone(), b.clone()]).unwrap();
        assert_eq!(joined.max_mass(), a.max_mass().max(b.max_mass()));
        assert_eq!(joined.samples().len(), 20);
    }

    #[test]
    fn json_shapes() {
        let d: ManifoldDescription = serde_json::from_str(
            r#"{"cusps":[{"lattice":{"v1":[1,0],"v2":[0,1]},"depth":[0,3]}],
                "tubes":[{"length":0.01,"radius":"meyerhoff"},{"length":0.02,"twist":0.5,"radius":1.5}],
                "fillers":[{"cusp":0,"L":20}]}"#,
        )
        .unwrap();
        assert_eq!(d.tubes[0].radius, TubeRadius::Named(RadiusKeyword::Meyerhoff));
        assert_eq!(d.tubes[1].radius, TubeRadius::Value(1.5));
        let back: ManifoldDescription = serde_json::from_str(&serde_json::to_string(&d).unwrap()).unwrap();
        assert_eq!(back, d);
        assert!(serde_json::from_str::<ManifoldDescription>(r#"{"cusp":[]}"#).is_err());
    }
}
