//! Commutation of operations on finite carriers.
//!
//! Operations are stored as dense value tables over a carrier `{0, .., s-1}`.
//! On top of that representation this crate computes the two Kronecker
//! products of a pair of operations, decides commutation, generates clones
//! (concrete subtheories of the full theory of a finite set), computes
//! commutants and centers, and exposes the finitary-monad view of a clone.
//! The [`ring`] module carries the single-arity, abelian-group-enriched
//! instance: endomorphism rings, centralizers and module commutants.
//!
//! Tuple indexing is little-endian mixed radix throughout: `(a_0, .., a_{n-1})`
//! lives at `sum a_i * s^i`. For a product arity `j*k` the variable pair
//! `(i, l)` sits at position `i*k + l`.
//!
//! The crate is `no_std` (with `alloc`) when the `std` feature is disabled.

#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

mod error;
pub use error::*;

pub mod commutant;
pub mod monad;
pub mod ops;
pub mod rig;
pub mod ring;
pub mod theory;

mod tuples;

pub use commutant::{commutant, commutes_with_all, theories_commute, Strategy};
pub use monad::{FreeElement, FreeMonad};
pub use ops::{commutes, kron1, kron2, projection, superpose, transpose_vars, OpTable, OpTuple};
pub use rig::{Rig, RMatrix};
pub use theory::{clone_generate, full_theory, Carrier, Limits, Slice, Theory};
