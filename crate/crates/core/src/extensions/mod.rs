//! Extensions `0 -> L -> E -> Q -> 0` with `L` of zero anchor: triples,
//! obstructions, equivalence, star sums and classification by central
//! cocycles.

pub mod center;
pub mod equivalence;
pub mod obstruction;
pub mod triple;

pub use center::{solve_inner, CentralPart};
pub use equivalence::{
    central_extension, classify, enumerate_extensions, equivalent, star_sum, Enumeration,
    Equivalence, EquivalenceWitness,
};
pub use obstruction::{obstruction, Obstruction};
pub use triple::{extend_from_cocycle, semidirect, ExtensionTriple};
