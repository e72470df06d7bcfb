//! Finitely generated abelian groups presented as cokernels of integer
//! relation matrices, morphisms between them, subgroups given by generator
//! lists, exponents, and the classical bound functions used alongside them.

mod bounds;
mod morphism;
mod presentation;
mod subgroup;

pub use bounds::{minkowski_bound, subgroup_type_p, verify_square_bounds, SquareMode, SquareReport};
pub use morphism::Morphism;
pub use presentation::{ExponentValue, Presentation};
pub use subgroup::{subquotient, Subgroup, SubquotientMap};
