//! Exact-arithmetic toolkit for finitely generated abelian group calculus,
//! spectral sequences of filtered cochain complexes, finite-order decision
//! procedures for integer matrices, and cup-product invariants of finitely
//! presented graded-commutative cohomology rings.
//!
//! Everything is computed over arbitrary-precision integers and rationals;
//! there is no floating point anywhere in the crate.

pub mod abelian;
pub mod complexes;
pub mod error;
pub mod json;
pub mod matrix;
pub mod rational;
pub mod rings;
pub mod roots;

pub use abelian::{ExponentValue, Morphism, Presentation, Subgroup};
pub use error::{Error, Result};
pub use matrix::{IntMatrix, SnfDecomposition};
pub use rational::QMatrix;
