//! Exact computation with finite MV-algebras.
//!
//! Every finite MV-algebra is a product of Łukasiewicz chains
//! `Ł_{n_1} × … × Ł_{n_t}`; this crate represents it by the sorted chain
//! profile and its elements by integer numerator tuples, so all arithmetic is
//! exact. On top of that sit homomorphism enumeration (with a brute-force
//! oracle), the finite MV-topological duality, amalgamation and joint
//! embedding, a finite-depth dyadic model of the Fraïssé limit on the Cantor
//! set, exhaustive Ramsey and Dual Ramsey checks, and the Boolean-center
//! functor.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

pub mod algebra;
pub mod axioms;
pub mod cantor;
pub mod duality;
mod error;
pub mod fraisse;
pub mod hom;
pub mod ramsey;
pub mod table;
pub mod transfer;

pub use algebra::{FiniteMvAlgebra, Ideal, MvElement, Op, OpValue};
pub use error::{Error, Result};
pub use hom::{Hom, HomKind, HomMode};
