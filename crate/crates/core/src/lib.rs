//! Partial group cohomology over finite groups, partial modules and inverse
//! semigroups.

// Cayley-table code indexes several tables by the same element.
#![allow(clippy::needless_range_loop)]

pub mod abelian;
pub mod bridge;
pub mod cohomology;
pub mod crossed;
pub mod exel;
pub mod fixtures;
pub mod group;
pub mod monoid;
pub mod partial_module;
pub mod resolution;
pub mod schema;
pub mod schur;
pub mod semigroup;
pub mod snf;
pub mod verify;

pub use abelian::AbelianPresentation;
pub use cohomology::{cohomology, Cochain, CohomologyGroup, DEFAULT_BUDGET};
pub use exel::{build_exel, ExelMonoid};
pub use group::FiniteGroup;
pub use monoid::CommMonoid;
pub use partial_module::{PartialGModule, SModule};
pub use resolution::cohomology_via_resolution;
pub use schur::{FiniteField, KLinearModule};
pub use semigroup::InvSemigroup;
