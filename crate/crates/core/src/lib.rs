//! Exact computations for semigroup actions on categories of differential modules.

pub mod field;
pub mod semigroup;
pub mod coherence;
pub mod diffmod;
pub mod hopf;
