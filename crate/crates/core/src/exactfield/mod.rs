//! Exact scalar arithmetic over ℚ, ℚ(θ), 𝔽_p and 𝔽_p(θ), and the linear
//! algebra built on it.

pub mod arith;
pub mod embedding;
pub mod field;
pub mod intpoly;
pub mod lattice;
pub mod matrix;

pub use arith::Arith;
pub use embedding::{complex_embeddings, ComplexEmbedding, FieldEmbedding};
pub use field::{Field, FieldKind, FieldSpec, Scalar};
pub use intpoly::{char_poly, char_poly_i64, poly_roots_complex, IntPolynomial};
pub use lattice::smith_index;
pub use matrix::{ExactMatrix, Rref};
