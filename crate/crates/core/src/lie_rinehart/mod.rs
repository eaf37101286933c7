//! Lie–Rinehart algebras with a global frame: data model, axiom checks,
//! representations, transformation algebroids, centers and derivations.

pub mod algebra;
pub mod graded_bracket;
pub mod representation;
pub mod spaces;
pub mod validation;

pub use algebra::{
    display_vector, transformation_algebroid, AlgebraBuilder, Element, LieRinehartAlgebra,
};
pub use graded_bracket::{GradedBracketStructure, GradedElement};
pub use representation::{PolyMatrix, Representation};
pub use spaces::{
    ad_matrix, apply_matrix, center, derivation_defect, derivation_spaces, Center, DerivationSpaces,
};
pub use validation::{AxiomCheck, ValidationReport};
