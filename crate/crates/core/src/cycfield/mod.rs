//! Exact arithmetic in cyclotomic fields.

mod elem;
pub mod poly;

pub use elem::{
    arith, canonicalize, embed_complex, field_div, galois_apply, lift_to_order, ArithOp, CycElem,
};
pub use poly::{cyclotomic_poly, CycloPoly};
