//! Computable geometry of thin parts of hyperbolic 3-manifolds: Margulis
//! tubes and cusps, warped-product metrics on `T × [a, b]`, minimal graphs,
//! solid-torus fillers, explicit area bounds and discrete sweep-outs.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod error;
pub mod filler;
pub mod graph;
pub mod lattice;
pub mod profile;
pub mod sweepout;
pub mod tube;
pub mod warped;

pub use error::{Error, Result};
pub use lattice::FlatTorusLattice;
