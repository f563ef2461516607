//! Line packings from transitive actions of finite groups.
//!
//! The pipeline runs from a permutation group acting transitively on a finite
//! set, through the orbital association scheme of that action, to the
//! primitive idempotents of its adjacency algebra. Those idempotents (and sums
//! of them) are Gram matrices of homogeneous tight frames, which are then
//! projectively reduced and certified against the Welch, orthoplex and
//! Levenstein bounds. A separate module builds the equiangular tight frames
//! carried by finite Heisenberg groups in exact arithmetic.

pub mod error;
mod exact;
pub mod fixtures;
pub mod frames;
pub mod heisenberg;
pub mod idempotents;
pub mod permgroup;
pub mod scheme;
pub mod symmetry;

pub use error::{Error, Result};
