//! Finite-group models of homotopy 2- and 3-types.
//!
//! Crossed modules, crossed squares, crossed n-cubes and 2-crossed modules
//! over finite groups, together with the simplicial machinery that links
//! them: nerves, binerves, the Artin–Mazur codiagonal, the diagonal, Moore
//! complexes and homotopy groups. All checks are exhaustive over the
//! Cayley tables.

pub mod error;
pub mod grp;
pub mod xmod;
pub mod xsq;
pub mod simp;
pub mod bisimp;
pub mod x2mod;
pub mod catalog;
pub mod json;

pub use error::{Error, Result, Violation};
