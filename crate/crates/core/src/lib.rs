//! Finite groups and semigroups from Cayley tables, n-closed subsets, coset
//! closedness and normality checks.
//!
//! A subset `D` is n-closed when every product `a_1 * ... * a_n` of members
//! (repetition allowed) is again a member. The decision procedure iterates
//! product sets `D, D*D, ...` so it is polynomial in the group order rather
//! than exponential in `n`; a tuple-enumeration oracle is kept alongside it
//! for cross-checking.

pub mod algebra;
pub mod coset;
pub mod error;
pub mod extract;
pub mod group;
pub mod named;
pub mod nclosed;
pub mod normality;
pub mod parse;
pub mod perm;
pub mod sampling;
pub mod subset;
pub mod theorem;

pub use error::{Error, Result};
pub use group::{Element, FiniteGroup, FiniteSemigroup, Magma, StructureId};
pub use perm::Permutation;
pub use subset::GSubset;
