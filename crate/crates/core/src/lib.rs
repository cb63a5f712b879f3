//! Finite ≤-hypergroupoids: crisp and fuzzy ideal theory, and machine
//! verification of the correspondence between a subset and its
//! characteristic function.
//!
//! - [`structure`]: tables, the relation `≤`, the subset product `A*B`.
//! - [`crisp`]: subgroupoids, ideals, prime and semiprime subsets.
//! - [`fuzzy`]: exact-rational fuzzy subsets and their ideal properties.
//! - [`theorems`]: universes of structures and the verification runs.
//! - [`format`]: the `lehyper v1` text format.
//! - [`cli`]: the command-line front end and JSON reports.

pub mod cli;
pub mod crisp;
pub mod error;
pub mod format;
pub mod fuzzy;
pub mod report;
pub mod structure;
pub mod subset;
pub mod theorems;

pub use error::{DomainError, StructureError};
pub use fuzzy::{FuzzySubset, Grade};
pub use report::{PropertyReport, Witness};
pub use structure::{Hypergroupoid, LeHypergroupoid, Relation};
pub use subset::Subset;
