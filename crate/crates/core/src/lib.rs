//! Exact computations with Lie–Rinehart algebras over polynomial rings.

// index loops read better than iterator chains in the elimination code
#![allow(clippy::needless_range_loop, clippy::type_complexity)]

pub mod ce_cohomology;
pub mod cli;
pub mod error;
pub mod exact_algebra;
pub mod extensions;
pub mod free_lie;
pub mod lie_rinehart;

pub use error::{Error, Result};
