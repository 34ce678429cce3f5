//! Finite p-groups given by multiplication tables, their automorphisms and
//! saturated fusion systems.

pub mod autos;
pub mod caps;
pub mod corpus;
pub mod elemset;
pub mod error;
pub mod families;
pub mod field;
pub mod fusion;
pub mod group;
pub mod harness;
pub mod invariants;
pub mod metacyclic;
pub mod presentation;
pub mod properties;
pub mod records;
pub mod subgroup;

pub use caps::Caps;
pub use elemset::ElemSet;
pub use error::{Error, Result};
pub use group::{Elem, Group, Source};
pub use presentation::{collect, PcPresentation, Word};
pub use subgroup::Subgroup;
pub use families::{Family, FamilySpec};
