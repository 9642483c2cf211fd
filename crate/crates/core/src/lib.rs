//! Exact verification toolkit for elliptic K3 surfaces carrying a
//! non-symplectic cyclic automorphism that acts trivially on the
//! Néron–Severi lattice.
//!
//! Everything is computed over the rationals or the integers; there is no
//! floating point anywhere in the crate.

pub mod arith;
pub mod autom;
pub mod catalog;
pub mod classify;
pub mod cyclotomic;
pub mod fibration;
pub mod kodaira;
pub mod lattice;
pub mod mw;
