//! Finite lattices and the functionals `L^A → L` built over them.
//!
//! The crate covers lattice construction and distributivity checks,
//! continuous self-maps, lattice terms with their disjunctive and
//! conjunctive normal forms, Sugeno integrals, the homogeneity and
//! invariance predicates that characterize polynomial functionals, and
//! cone/blocker duality. The [`suite`] module runs every characterization
//! exhaustively or on seeded samples over a fixed catalog of small lattices.
//! [`formats`] reads the text file formats and [`cli`] backs the `latfun`
//! binary.

pub mod cli;
pub mod duality;
pub mod error;
pub mod formats;
pub mod functionals;
pub mod lattice;
pub mod maps;
pub mod subset;
pub mod suite;
pub mod terms;

pub use error::{Error, Result};
pub use functionals::{Capacity, ClassificationReport, FunctionalTable};
pub use lattice::{Element, ElementSet, Lattice};
pub use maps::{Continuity, EndoMap};
pub use subset::IndexSet;
pub use terms::{FormKind, NormalForm, Signature, Term};
