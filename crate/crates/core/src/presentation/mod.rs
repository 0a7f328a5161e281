//! Noncommutative polynomials, algebra presentations, the `.ncs` source
//! language and the crossed-product constructor.

pub mod algebra;
pub mod lexer;
pub mod parser;
pub mod polynomial;
pub mod printer;

pub use algebra::{crossed_product, AlgebraPresentation, GroupActionSpec};
pub use parser::{parse_field, parse_polynomial, parse_scalar, parse_source, ModuleCandidate, SourceFile};
pub use polynomial::{NcPolynomial, Word};
pub use printer::{print_algebra, print_field, print_matrix, print_polynomial, print_source};
