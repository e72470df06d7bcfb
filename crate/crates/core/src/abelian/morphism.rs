use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

use super::presentation::{ExponentValue, Presentation};
use super::subgroup::Subgroup;

/// A homomorphism between presented groups, given by an integer matrix on
/// generators. Well-definedness (relators map into the target relation
/// lattice) is validated eagerly at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    source: Presentation,
    target: Presentation,
    matrix: IntMatrix,
}

impl Morphism {
    pub fn new(source: Presentation, target: Presentation, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.generators() || matrix.cols() != source.generators() {
            return Err(Error::Shape(format!(
                "morphism matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.generators(),
                source.generators()
            )));
        }
        for j in 0..source.relations().cols() {
            let relator = source.relations().column(j);
            let image = matrix.mul_vec(&relator);
            if !target.is_zero_element(&image) {
                return Err(Error::NotWellDefined(format!(
                    "source relator {j} does not map into the target relation lattice"
                )));
            }
        }
        Ok(Morphism { source, target, matrix })
    }

    pub fn identity(p: &Presentation) -> Self {
        Morphism {
            source: p.clone(),
            target: p.clone(),
            matrix: IntMatrix::identity(p.generators()),
        }
    }

    pub fn zero(source: &Presentation, target: &Presentation) -> Self {
        Morphism {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMatrix::zero(target.generators(), source.generators()),
        }
    }

    /// Multiplication by an integer scalar on a group.
    pub fn scalar(p: &Presentation, k: &BigInt) -> Self {
        Morphism {
            source: p.clone(),
            target: p.clone(),
            matrix: IntMatrix::identity(p.generators()).scale(k),
        }
    }

    pub fn source(&self) -> &Presentation {
        &self.source
    }

    pub fn target(&self) -> &Presentation {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.matrix.mul_vec(v)
    }

    /// self after other: (self . other)(x) = self(other(x)).
    pub fn compose(&self, other: &Morphism) -> Result<Morphism> {
        if other.target != self.source {
            return Err(Error::AmbientMismatch(
                "composition: inner target differs from outer source".into(),
            ));
        }
        Ok(Morphism {
            source: other.source.clone(),
            target: self.target.clone(),
            matrix: &self.matrix * &other.matrix,
        })
    }

    /// Zero as a map of presented groups (not merely a zero matrix).
    pub fn is_zero_map(&self) -> bool {
        (0..self.matrix.cols()).all(|j| self.target.is_zero_element(&self.matrix.column(j)))
    }

    pub fn equals(&self, other: &Morphism) -> bool {
        self.source == other.source
            && self.target == other.target
            && (0..self.matrix.cols()).all(|j| {
                self.target
                    .elements_equal(&self.matrix.column(j), &other.matrix.column(j))
            })
    }

    /// Image of the whole source, as a subgroup of the target.
    pub fn image(&self) -> Subgroup {
        Subgroup::new(self.target.clone(), self.matrix.columns())
            .expect("image generators live in the target")
    }

    /// Presentation of target / image.
    pub fn cokernel(&self) -> Presentation {
        let rel = self.target.relations().hstack(&self.matrix);
        Presentation::new(self.target.generators(), rel).expect("cokernel presentation")
    }

    /// exp f := exp(target / f(source)); infinite when the cokernel has
    /// positive rank.
    pub fn exponent(&self) -> ExponentValue {
        self.cokernel().exponent()
    }

    /// The induced map f_Z between the torsion-free quotients.
    pub fn lattice_part(&self) -> Morphism {
        let p_target = self.target.free_projection();
        let s_source = self.source.free_section();
        let matrix = &(&p_target * &self.matrix) * &s_source;
        Morphism {
            source: Presentation::free(self.source.rank()),
            target: Presentation::free(self.target.rank()),
            matrix,
        }
    }

    /// Projection of the source onto its torsion-free quotient.
    pub fn free_quotient_projection(p: &Presentation) -> Morphism {
        Morphism {
            source: p.clone(),
            target: Presentation::free(p.rank()),
            matrix: p.free_projection(),
        }
    }

    /// Is f surjective as a map of presented groups?
    pub fn is_surjective(&self) -> bool {
        self.cokernel().is_trivial()
    }

    /// A surjective endomorphism of a f.g. group is an automorphism.
    pub fn is_automorphism(&self) -> bool {
        self.source == self.target && self.is_surjective()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn well_definedness_checked() {
        let z2 = Presentation::from_invariants(&[2], 0);
        let z = Presentation::free(1);
        // Z/2 -> Z, 1 |-> 1 is not well defined
        assert!(Morphism::new(z2.clone(), z.clone(), IntMatrix::from_rows(&[&[1]])).is_err());
        // Z -> Z/2 projection is
        assert!(Morphism::new(z, z2, IntMatrix::from_rows(&[&[1]])).is_ok());
    }

    #[test]
    fn exponent_of_morphisms() {
        let z = Presentation::free(1);
        let times3 = Morphism::scalar(&z, &BigInt::from(3));
        assert_eq!(times3.exponent(), ExponentValue::Finite(BigInt::from(3)));

        let z2 = Presentation::free(2);
        let diag = Morphism::new(z2.clone(), z2, IntMatrix::from_rows(&[&[2, 0], &[0, 6]]))
            .unwrap();
        assert_eq!(diag.exponent(), ExponentValue::Finite(BigInt::from(6)));

        let zero_in = Morphism::zero(&Presentation::trivial(), &Presentation::free(1));
        assert_eq!(zero_in.exponent(), ExponentValue::Infinite);
    }

    #[test]
    fn lattice_part_identity_on_mixed_group() {
        // id on Z + Z/2 becomes id on Z
        let g = Presentation::from_invariants(&[2], 1);
        let f = Morphism::identity(&g);
        let fz = f.lattice_part();
        assert_eq!(fz.source().rank(), 1);
        assert_eq!(fz.matrix(), &IntMatrix::identity(1));
    }

    #[test]
    fn lattice_part_times3() {
        // f: Z + Z/2 -> Z, (a, t) |-> 3a
        let src = Presentation::new(
            2,
            IntMatrix::from_rows(&[&[0], &[2]]),
        )
        .unwrap();
        let tgt = Presentation::free(1);
        let f = Morphism::new(src, tgt, IntMatrix::from_rows(&[&[3, 0]])).unwrap();
        let fz = f.lattice_part();
        assert_eq!(fz.matrix().rows(), 1);
        assert_eq!(fz.matrix().cols(), 1);
        let e = fz.matrix().get(0, 0);
        assert!(e == &BigInt::from(3) || e == &BigInt::from(-3));
    }

    #[test]
    fn lattice_part_commutes_with_projections() {
        // f_Z . proj_source = proj_target . f
        let src = Presentation::new(2, IntMatrix::from_rows(&[&[4, 0], &[0, 0]])).unwrap();
        let tgt = Presentation::new(2, IntMatrix::from_rows(&[&[2, 0], &[0, 0]])).unwrap();
        let f = Morphism::new(
            src.clone(),
            tgt.clone(),
            IntMatrix::from_rows(&[&[2, 0], &[0, 3]]),
        )
        .unwrap();
        let fz = f.lattice_part();
        let left = fz
            .compose(&Morphism::free_quotient_projection(&src))
            .unwrap();
        let right = Morphism::free_quotient_projection(&tgt).compose(&f).unwrap();
        assert!(left.equals(&right));
    }
}
