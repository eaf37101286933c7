//! The `lrcalc` command line: session files in, JSON documents out.
//!
//! Exit codes: 0 on success, 1 on a negative mathematical answer (not
//! equivalent, obstructed, a failed check), 2 on input errors.

pub mod commands;
pub mod session;

pub use commands::{run, Outcome};
pub use session::{parse_field, CocycleLiteral, Overrides, Session, SessionFile};
