//! Exact scalars, polynomials, sparse matrices and graded slicing.

pub mod expr;
pub mod graded;
pub mod matrix;
pub mod poly;
pub mod scalar;

pub use expr::{parse_expression, ExprTarget};
pub use graded::{
    graded_component_basis, monomials_of_degree, slice_degrees, slice_matrix, FreeGrading,
    SliceBasis,
};
pub use matrix::{extend_basis, same_span, span_rank, Echelon, ExactMatrix, SparseVec};
pub use poly::{BaseRing, Derivation, Monomial, Poly};
pub use scalar::{Field, Scalar};
