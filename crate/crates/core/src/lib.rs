//! Exact-arithmetic kernel for finitely presented dg-categories and
//! A-infinity categories.
//!
//! The crate is organized around a small tower:
//!
//! * [`scalar`] and [`matrix`] provide exact scalars (rationals or a prime
//!   field) and dense linear algebra (rank, kernel, solve).
//! * [`complex`] computes cohomology of finite windows of cochain complexes.
//! * [`graded`] holds graded vector spaces, graded quivers, tensor words and
//!   the Koszul sign calculus.
//! * [`category`], [`functor`] and [`model`] present A-infinity categories
//!   and functors, verify their defining identities and decide the
//!   weak-equivalence / fibration predicates for dg-functors.
//! * [`barcobar`] builds reductions, bar and cobar constructions, the
//!   enveloping dg-category and its counit functor.
//! * [`functor_cat`] realizes the hom complexes of the category of
//!   A-infinity functors, [`hochschild`] the Hochschild complex, cup
//!   product, bracket and the homotopy-group cross-check, and [`nerve`] /
//!   [`segal`] the simplicial machinery.
//!
//! Everything is immutable after construction and all operations are pure;
//! no tolerances appear anywhere, every identity is checked over an exact
//! field.
//!
//! # Sign convention
//!
//! All operation tables are stored on the *suspended* quiver: an operation
//! of arity `k` and degree `2 - k` on the plain quiver becomes an operation
//! of uniform degree `+1` after conjugating with the shift, a functor
//! component of degree `1 - k` becomes a map of degree `0`, and a
//! transformation of degree `d` has components of uniform degree `d - 1`.
//! In suspended form every structural identity (the associativity tower,
//! functor equations, bar differential, hom-complex differential and
//! composition) is sign-free except for Koszul commutation signs, which are
//! produced in exactly one place ([`graded::koszul_sign`]). The conversions
//! between plain and suspended tables live in [`category::suspend_table`]
//! and [`category::unsuspend_value`].

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod barcobar;
pub mod category;
pub mod complex;
pub mod functor;
pub mod functor_cat;
pub mod graded;
pub mod hochschild;
pub mod matrix;
pub mod model;
pub mod nerve;
pub mod scalar;
pub mod segal;

pub use category::{AInfPresentation, CheckReport, H0Category};
pub use complex::ComplexPresentation;
pub use functor::AInfFunctor;
pub use graded::{GenId, GradedQuiver, GradedVectorSpace, LinComb, ObjId};
pub use matrix::Matrix;
pub use scalar::{FieldSpec, Scalar};
