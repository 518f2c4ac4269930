//! Finite fields GF(p^k) and exact dense linear algebra over them.
//!
//! Everything downstream (group algebras, idempotent decompositions, module
//! decompositions) reduces to row reduction over these fields, so the entire
//! layer is deterministic: fixed modulus choice, fixed pivoting order.

mod field;
mod matrix;

pub use field::{is_prime, make_field, Fel, Field, FieldDesc, ONE, ZERO};
pub use matrix::{intersect_subspaces, FieldMatrix};
