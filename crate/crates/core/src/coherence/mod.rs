//! Finite action data over evaluation categories and the checks that
//! decide whether it extends to an associative semigroup action.
//!
//! Functors have the block shape `V ↦ K^k ⊕ ^σV`. A natural isomorphism
//! between two such composites is stored as a pad block plus a scalar on the
//! core, which keeps both whiskerings computable without per-object tables.

mod action;
mod category;
pub mod examples;
mod free;
mod json;
mod natiso;
pub mod random;
mod report;

use thiserror::Error;

use crate::field::FieldError;
use crate::semigroup::SemigroupError;

pub use action::{check_action_morphism, ActionData, Extender};
pub use json::{action_from_json, action_to_json, category_from_json, category_to_json, parse_action, ActionJson, CategoryJson, FunctorJson, IsoJson, MorphismJson};
pub use free::{combine_free_product, FreeProductAction};
pub use category::{check_functor_laws, BlockFunctor, EvalCategory, GenMorphism, Object, Table};
pub use natiso::{first_difference, naturality_failures, NatIso};
pub use report::{Failure, Report};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoherenceError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("invalid action data: {0}")]
    Invalid(String),
}
