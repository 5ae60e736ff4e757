//! Finite inverse semigroups, inductive groupoids, double inverse semigroups
//! and presheaves of Abelian groups, all decided by exhaustive scans.

pub mod axioms;
pub mod double;
pub mod error;
pub mod esn;
pub mod inverse;
pub mod presheaf;
pub mod relation;
pub mod search;
pub mod tables;

pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use tables::{CayleyTable, ElementId, Verdict};

/// Version stamped into every JSON document this crate emits.
pub const SCHEMA_VERSION: u32 = 1;
