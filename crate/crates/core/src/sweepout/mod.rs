//! Discrete sweep-outs: the cell complexes `I(m, j)`, formal currents made
//! of patches, fineness, and area profiles of explicit sweep-outs of cusp
//! and tube ends and of the fillers glued to them.

mod complex;
mod current;
mod profile;

pub use complex::{grid_distance, project_vertex, vertices, Vertex, MAX_LEVEL};
pub use current::{fineness, interpolate_patches, DiscreteFamily, FormalCurrent, Patch};
pub use profile::{
    cusp_profile, filler_profile, max_mass, meyerhoff_tube, profile, tube_profile, CuspEnd, FillerAttachment,
    ManifoldDescription, MaxMass, ProfileSample, RadiusKeyword, ResolvedManifold, SweepoutProfile, TubeEnd, TubeRadius,
    GLUING_TOLERANCE,
};
