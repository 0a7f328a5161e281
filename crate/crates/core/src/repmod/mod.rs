//! Finite-dimensional modules given by matrices, their intertwiners, and
//! classification of families by central character.

mod classify;
mod extend;
mod hom;
mod representation;

pub use classify::{classify_family, Fibre, FibreFlag, FibreReport};
pub use extend::{extend_algebra, extend_family, extend_scalars};
pub use hom::{central_character, hom_space, inner_map, is_isomorphic, CentralCharacter, MAX_ISO_SEARCH};
pub use representation::{parse, validate, Representation, Violation};
