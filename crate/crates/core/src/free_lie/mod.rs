//! Free Lie algebras in the Lyndon basis, free Lie–Rinehart algebras, and
//! the skew enveloping algebra of a free algebroid.

pub mod algebra;
pub mod algebroid;
pub mod lyndon;
pub mod skew;
pub mod vanishing;

pub use algebra::{display_lie, FreeLieAlgebra, LieElement, LieExpr};
pub use algebroid::{
    display_free_element, free_lie_rinehart, induced_morphism, present_as_quotient, FreeElement,
    FreeLieRinehart, FreePresentation, InducedMorphism, PresentationLevel,
};
pub use lyndon::{
    bracketing, is_lyndon, lyndon_by_length, lyndon_words, spell, standard_factorization,
    witt_count, Word,
};
pub use skew::{SkewAlgebra, SkewElement, SkewFactor};
pub use vanishing::{free_cohomology_vanishing_check, VanishingReport};
