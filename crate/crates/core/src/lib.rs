//! Finite permutation groups and supersolubility.
//!
//! The crate enumerates small permutation groups completely, computes their
//! subgroup lattices, and decides supersolubility three independent ways:
//! from a chief series, from the indices of maximal subgroups, and from the
//! existence of a supersoluble subgroup of index `p` for every prime `p`
//! dividing the order. The [`tcc`] module checks the permutability
//! conditions on factorised groups `G = HK` that force supersolubility, and
//! [`sweep`] runs all of it over the built-in catalog.

pub mod catalog;
pub mod criteria;
pub mod error;
pub mod format;
pub mod group;
pub mod par;
pub mod perm;
pub mod set;
pub mod structure;
pub mod subgroups;
pub mod sweep;
pub mod tcc;

pub use error::{Error, Result};
pub use group::{conjugate_subgroup, join, trivial, whole, Group, Limits, Subgroup};
pub use perm::Perm;
pub use set::ElementSet;
