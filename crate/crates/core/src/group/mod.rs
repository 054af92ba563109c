//! Finite permutation groups, their actions on finite sets, and commuting tuples.

mod finite_group;
mod gset;
mod hom;
mod perm;
mod product;
mod tuples;

pub use finite_group::{max_order, ConjugacyClass, FiniteGroup, DEFAULT_MAX_ORDER};
pub use gset::{induced_gset, GSet, InducedGSet};
pub use hom::GroupHom;
pub use perm::Perm;
pub use product::{direct_product, DirectProduct};
pub use tuples::{canonical_form, centralizer, commuting_tuples, transporter, CommutingTuple};
