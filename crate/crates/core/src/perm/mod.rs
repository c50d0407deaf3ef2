//! Finite permutation groups: elements, stabiliser chains, orbits,
//! suborbits, transporters, normalisers and structural predicates.

mod chain;
mod group;
mod permutation;

pub use group::{PermGroup, DEFAULT_ENUMERATION_BOUND};
pub use permutation::Permutation;
