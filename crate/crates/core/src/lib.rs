//! Scale functions, localised scales and modular functions for universal
//! groups `U(F)` acting on regular trees, on top of a small permutation-group
//! engine (stabiliser chains, Sylow/Hall machinery) and supernatural numbers.
//!
//! Module map:
//! - [`perm`]: permutations and permutation groups
//! - [`sylow`]: Sylow subgroups, cores, Fitting subgroup, Sylow bases
//! - [`supernat`]: supernatural-number arithmetic
//! - [`bmtree`]: axis data, scale, modular function, localised scales, spectra
//! - [`balloracle`]: brute-force orbit counting used as an independent check
//! - [`groupspec`]: textual group specifications and group files
//! - [`verify`]: the acceptance battery

pub mod balloracle;
pub mod bmtree;
pub mod error;
pub mod exec;
pub mod groupspec;
pub mod perm;
pub mod supernat;
pub mod sylow;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Execution;
pub use perm::{PermGroup, Permutation};
pub use supernat::Supernatural;
