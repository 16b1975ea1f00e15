//! Finite groups as Cayley tables, with homomorphisms, subgroups, quotients,
//! actions, semidirect products and exact isomorphism testing.

pub mod abelian;
pub mod action;
pub mod group;
pub mod hom;
pub mod iso;

pub use abelian::abelian_invariants;
pub use action::{conjugation_action, inner_action, semidirect, GroupAction, Semidirect};
pub use group::{FinGroup, Group};
pub use hom::{quotient, GroupHom, Quotient, Subgroup};
pub use iso::{all_isomorphisms, for_each_isomorphism, iso_check, iso_check_bounded};
