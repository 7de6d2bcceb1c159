//! Exact computations with foliations on the projective plane over finite
//! fields: p-th powers of derivations, p-divisors, invariant curves, special
//! pairs, the Jouanolou family and Newton-polytope irreducibility tests.

pub mod bipoly;
pub mod cli;
pub mod error;
pub mod factor;
pub mod finitefield;
pub mod foliation;
pub mod invariance;
pub mod jouanolou;
pub mod multipoly;
pub mod newton;
pub mod pdivisor;
pub mod upoly;

pub use error::{Error, Result};
pub use finitefield::{construct_field, FieldDescriptor, FieldElement};
pub use multipoly::{Monomial, MultiPoly};
