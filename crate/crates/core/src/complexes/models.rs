//! Small reference filtered complexes used as golden fixtures: the Hopf
//! fibration S¹ → S³ → S² at cochain level, and a product of two circles
//! filtered by the degree of one factor.

use crate::abelian::{Morphism, Presentation, Subgroup};
use crate::matrix::IntMatrix;

use super::complex::CochainComplex;
use super::filtered::{subgroup_from_rows, FilteredComplex};

/// C^0 = Z, C^1 = Z⟨x⟩, C^2 = Z⟨y⟩, C^3 = Z⟨z⟩ with d(x) = y, filtered by
/// base degree: y and z sit in F^2, x in F^0. Total cohomology (Z, 0, 0, Z);
/// d_2^{0,1} is an isomorphism and the sequence does not degenerate at E_2.
pub fn hopf_model() -> FilteredComplex {
    let z = Presentation::free(1);
    let groups = vec![z.clone(), z.clone(), z.clone(), z];
    let d0 = Morphism::zero(&groups[0], &groups[1]);
    let d1 = Morphism::new(groups[1].clone(), groups[2].clone(), IntMatrix::from_rows(&[&[1]]))
        .expect("d(x) = y");
    let d2 = Morphism::zero(&groups[2], &groups[3]);
    let c = CochainComplex::new(0, groups.clone(), vec![d0, d1, d2]).expect("Hopf complex");
    let filtration = vec![
        vec![Subgroup::trivial(&groups[0]), Subgroup::trivial(&groups[0])],
        vec![Subgroup::trivial(&groups[1]), Subgroup::trivial(&groups[1])],
        vec![Subgroup::full(&groups[2]), Subgroup::full(&groups[2])],
        vec![Subgroup::full(&groups[3]), Subgroup::full(&groups[3])],
    ];
    FilteredComplex::new(c, 2, filtration).expect("Hopf filtration")
}

/// Product of two circles with zero differentials: C^* = (Z, Z², Z) filtered
/// by the degree of the first circle factor. Degenerates at E_2 with Betti
/// profile (1, 2, 1).
pub fn two_circles_model() -> FilteredComplex {
    let groups = vec![Presentation::free(1), Presentation::free(2), Presentation::free(1)];
    let d0 = Morphism::zero(&groups[0], &groups[1]);
    let d1 = Morphism::zero(&groups[1], &groups[2]);
    let c = CochainComplex::new(0, groups.clone(), vec![d0, d1]).expect("two-circles complex");
    let filtration = vec![
        vec![Subgroup::trivial(&groups[0])],
        vec![subgroup_from_rows(&groups[1], &[vec![1, 0]]).expect("base cell")],
        vec![Subgroup::full(&groups[2])],
    ];
    FilteredComplex::new(c, 1, filtration).expect("two-circles filtration")
}
