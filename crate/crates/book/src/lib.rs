//! The guide under `book/src`, one module per chapter, so that
//! `cargo test --doc` runs every snippet against the current library.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/lattices.md")]
pub mod lattices {}
#[doc = include_str!("../../../book/src/tubes.md")]
pub mod tubes {}
#[doc = include_str!("../../../book/src/warped.md")]
pub mod warped {}
#[doc = include_str!("../../../book/src/minimal-graphs.md")]
pub mod minimal_graphs {}
#[doc = include_str!("../../../book/src/fillers.md")]
pub mod fillers {}
#[doc = include_str!("../../../book/src/area-bounds.md")]
pub mod area_bounds {}
#[doc = include_str!("../../../book/src/sweepouts.md")]
pub mod sweepouts {}
#[doc = include_str!("../../../book/src/command-line.md")]
pub mod command_line {}
