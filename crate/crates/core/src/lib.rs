//! Exact verification of divisibility theorems for weighted sums of products
//! of Gaussian binomial coefficients.
//!
//! Everything is computed with arbitrary-precision integers: polynomial
//! identities are checked coefficient by coefficient and congruences by exact
//! Euclidean division modulo unit-leading moduli such as `[n]` and `[p]^2`.

pub mod bigint_poly;
pub mod congruence;
pub mod faulhaber;
pub mod int_arith;
pub mod q_objects;
pub mod sweep;
pub mod theorems;

use thiserror::Error;

pub use bigint_poly::{BigRat, IntPoly, PolyError};
pub use congruence::{CongruenceReport, Params, Status, Witness};
pub use q_objects::LaurentPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    /// A mathematically impossible outcome; always an implementation bug.
    #[error("internal error: {0}")]
    Internal(String),
    #[error("singular specialization: {0}")]
    SingularSpecialization(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}
