use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::complex::MAX_LEVEL;
use crate::error::{domain, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Patch {
    pub multiplicity: i64,
    pub area: f64,
}

/// A formal integer combination of patches. Two patches with the same id
/// are the same surface piece; different ids are disjoint.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<PatchEntry>", into = "Vec<PatchEntry>")]
pub struct FormalCurrent {
    patches: BTreeMap<String, Patch>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PatchEntry {
    patch: String,
    multiplicity: i64,
    area: f64,
}

impl TryFrom<Vec<PatchEntry>> for FormalCurrent {
    type Error = crate::Error;

    fn try_from(v: Vec<PatchEntry>) -> Result<Self> {
        FormalCurrent::new(v.into_iter().map(|e| (e.patch, e.multiplicity, e.area)))
    }
}

impl From<FormalCurrent> for Vec<PatchEntry> {
    fn from(c: FormalCurrent) -> Self {
        c.patches
            .into_iter()
            .map(|(patch, p)| PatchEntry {
                patch,
                multiplicity: p.multiplicity,
                area: p.area,
            })
            .collect()
    }
}

impl FormalCurrent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn new<S: Into<String>>(patches: impl IntoIterator<Item = (S, i64, f64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (id, multiplicity, area) in patches {
            let id = id.into();
            if !(area >= 0.0) || !area.is_finite() {
                return domain(format!("patch {id:?} has invalid area {area}"));
            }
            if map.insert(id.clone(), Patch { multiplicity, area }).is_some() {
                return domain(format!("duplicate patch id {id:?}"));
            }
        }
        Ok(Self { patches: map })
    }

    /// A single patch with multiplicity one.
    pub fn single(id: impl Into<String>, area: f64) -> Result<Self> {
        Self::new([(id.into(), 1, area)])
    }

    pub fn patches(&self) -> impl Iterator<Item = (&str, &Patch)> {
        self.patches.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// `M = Σ |n_i| area_i`.
    pub fn mass(&self) -> f64 {
        self.patches
            .values()
            .map(|p| p.multiplicity.unsigned_abs() as f64 * p.area)
            .sum()
    }

    /// `M(self − other) = Σ |n_i − m_i| area_i` over the union of patches.
    pub fn mass_of_difference(&self, other: &Self) -> Result<f64> {
        let mut total = 0.0;
        for (id, p) in &self.patches {
            match other.patches.get(id) {
                Some(q) if q.area != p.area => {
                    return domain(format!("patch {id:?} has areas {} and {}", p.area, q.area));
                }
                Some(q) => total += p.multiplicity.abs_diff(q.multiplicity) as f64 * p.area,
                None => total += p.multiplicity.unsigned_abs() as f64 * p.area,
            }
        }
        for (id, q) in &other.patches {
            if !self.patches.contains_key(id) {
                total += q.multiplicity.unsigned_abs() as f64 * q.area;
            }
        }
        Ok(total)
    }

    /// Each patch cut into `k` pieces of equal area, ids `"{id}#{m}/{k}"`.
    pub fn subdivided(&self, k: usize) -> Self {
        let mut patches = BTreeMap::new();
        for (id, p) in &self.patches {
            for m in 0..k {
                patches.insert(
                    format!("{id}#{m}/{k}"),
                    Patch {
                        multiplicity: p.multiplicity,
                        area: p.area / k as f64,
                    },
                );
            }
        }
        Self { patches }
    }
}

/// A map `φ : I(1, j)₀ → Z₂`, vertex `i / 3^j` carrying `currents[i]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FamilyJson", into = "FamilyJson")]
pub struct DiscreteFamily {
    level: u32,
    currents: Vec<FormalCurrent>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyJson {
    level: u32,
    currents: Vec<FormalCurrent>,
}

impl TryFrom<FamilyJson> for DiscreteFamily {
    type Error = crate::Error;

    fn try_from(j: FamilyJson) -> Result<Self> {
        DiscreteFamily::new(j.level, j.currents)
    }
}

impl From<DiscreteFamily> for FamilyJson {
    fn from(f: DiscreteFamily) -> Self {
        FamilyJson {
            level: f.level,
            currents: f.currents,
        }
    }
}

impl DiscreteFamily {
    pub fn new(level: u32, currents: Vec<FormalCurrent>) -> Result<Self> {
        if level > MAX_LEVEL {
            return domain(format!("level {level} exceeds {MAX_LEVEL}"));
        }
        let n = 3usize.pow(level) + 1;
        if currents.len() != n {
            return domain(format!(
                "I(1, {level}) has {n} vertices, got {} currents",
                currents.len()
            ));
        }
        Ok(Self { level, currents })
    }

    /// Places a chain `c_0, …, c_k` on the coarsest `I(1, j)` with
    /// `3^j ≥ k`, holding `c_k` on the remaining vertices.
    pub fn from_chain(chain: Vec<FormalCurrent>) -> Result<Self> {
        if chain.len() < 2 {
            return domain("a chain needs at least two currents");
        }
        let k = chain.len() - 1;
        let mut level = 0;
        while 3usize.pow(level) < k {
            level += 1;
        }
        let n = 3usize.pow(level) + 1;
        let last = chain[k].clone();
        let mut currents = chain;
        currents.resize(n, last);
        Self::new(level, currents)
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn currents(&self) -> &[FormalCurrent] {
        &self.currents
    }

    /// Whether both endpoints carry the zero current.
    pub fn is_relative(&self) -> bool {
        let n = self.currents.len();
        self.currents[0].mass() == 0.0 && self.currents[n - 1].mass() == 0.0
    }

    pub fn max_mass(&self) -> f64 {
        self.currents.iter().map(FormalCurrent::mass).fold(0.0, f64::max)
    }
}

/// `sup M(φ(x) − φ(y)) / d(x, y)` over distinct vertices.
///
/// The patchwise mass of a difference is an `ℓ¹` norm, so
/// `M(φ(x) − φ(y))` is at most the sum of the masses of the unit steps
/// between `x` and `y`, of which there are `d(x, y)`. The supremum is
/// therefore attained on adjacent vertices.
pub fn fineness(fam: &DiscreteFamily) -> Result<f64> {
    let mut best = 0.0f64;
    for w in fam.currents.windows(2) {
        best = best.max(w[0].mass_of_difference(&w[1])?);
    }
    Ok(best)
}

/// A chain from `a` to `b` in `k` steps. Every patch of `a` and `b` is cut
/// into `k` equal pieces; step `m` switches the `m`-th piece of each patch
/// from its multiplicity in `a` to its multiplicity in `b`, so each step
/// has mass `M(a − b) / k`.
///
/// For `k = 1` the chain is `(a, b)` as given.
pub fn interpolate_patches(a: &FormalCurrent, b: &FormalCurrent, k: usize) -> Result<Vec<FormalCurrent>> {
    if k == 0 {
        return domain("interpolation needs at least one step");
    }
    a.mass_of_difference(b)?;
    if k == 1 {
        return Ok(vec![a.clone(), b.clone()]);
    }
    let mult = |c: &FormalCurrent, id: &str| c.patches.get(id).map_or(0, |p| p.multiplicity);
    let ids: BTreeMap<&str, f64> = a
        .patches
        .iter()
        .chain(&b.patches)
        .map(|(id, p)| (id.as_str(), p.area))
        .collect();
    let mut chain = Vec::with_capacity(k + 1);
    for step in 0..=k {
        let mut patches = BTreeMap::new();
        for (&id, &area) in &ids {
            for m in 0..k {
                let n = if m < step { mult(b, id) } else { mult(a, id) };
                if n != 0 {
                    patches.insert(
                        format!("{id}#{m}/{k}"),
                        Patch {
                            multiplicity: n,
                            area: area / k as f64,
                        },
                    );
                }
            }
        }
        chain.push(FormalCurrent { patches });
    }
    Ok(chain)
}
