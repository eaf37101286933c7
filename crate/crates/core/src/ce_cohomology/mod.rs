//! Chevalley–Eilenberg cohomology, its sharp truncation and the low-degree
//! exact sequence of an ideal.

pub mod complex;
pub mod five_term;
pub mod summary;

pub use complex::{subsets, CochainComplex, CochainSpace};
pub use five_term::{five_term_check, FiveTermReport};
pub use summary::{
    cohomology, d_squared_failures, invariants, truncated_cohomology, CohomologyRow,
    CohomologySummary, TruncatedSummary,
};
