//! Exact computation of Hecke's inverse cotangent numbers ĉt_j in cyclotomic fields.
//!
//! The numbers are obtained three ways and cross-checked:
//! - by inverting the cotangent matrix (ct_{jk*}) over Q(ζ_n) ([`cotangent::matrix_ict`]),
//! - for square-free n, by inverting the rational generalized Bernoulli matrix
//!   ([`cotangent::theorem1_ict`]),
//! - from Gauss sums and generalized Bernoulli numbers ([`characters::theorem2_ict`]).
//!
//! [`series`] evaluates the defining Möbius series numerically.

pub mod bernoulli;
pub mod characters;
pub mod cotangent;
pub mod cycfield;
pub mod error;
pub mod golden;
pub mod matrix;
pub mod ntheory;
pub mod rat;
pub mod render;
pub mod series;
pub mod verify;

pub use cycfield::CycElem;
pub use error::{Error, Result};
pub use rat::Rat;
