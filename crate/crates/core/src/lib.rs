//! Exact computations with finitely presented algebras that are finite over
//! their centre, and with finite-dimensional modules over them.

pub mod error;
pub mod exactfield;
pub mod presentation;
pub mod repmod;
pub mod extcalc;
pub mod tangent;
pub mod heights;
pub mod intersect;

pub use error::{Error, Result};
