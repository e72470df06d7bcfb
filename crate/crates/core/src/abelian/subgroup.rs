use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

use super::morphism::Morphism;
use super::presentation::Presentation;

/// A subgroup of a presented group, stored as a generator list in ambient
/// coordinates. Membership reduces to integer linear system solving against
/// the generators plus the ambient relation lattice.
#[derive(Clone, Debug)]
pub struct Subgroup {
    ambient: Presentation,
    generators: Vec<Vec<BigInt>>,
}

impl Subgroup {
    pub fn new(ambient: Presentation, generators: Vec<Vec<BigInt>>) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if g.len() != ambient.generators() {
                return Err(Error::Shape(format!(
                    "subgroup generator {i} has length {}, ambient has {} generators",
                    g.len(),
                    ambient.generators()
                )));
            }
        }
        Ok(Subgroup { ambient, generators })
    }

    pub fn trivial(ambient: &Presentation) -> Self {
        Subgroup { ambient: ambient.clone(), generators: Vec::new() }
    }

    pub fn full(ambient: &Presentation) -> Self {
        let gens = IntMatrix::identity(ambient.generators()).columns();
        Subgroup { ambient: ambient.clone(), generators: gens }
    }

    pub fn ambient(&self) -> &Presentation {
        &self.ambient
    }

    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    /// Generators stacked as matrix columns.
    pub fn generator_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.ambient.generators(), &self.generators)
    }

    /// [generators | ambient relations], whose column lattice is the full
    /// preimage of this subgroup in Z^n.
    fn saturated_matrix(&self) -> IntMatrix {
        self.generator_matrix().hstack(self.ambient.relations())
    }

    fn check_same_ambient(&self, other: &Subgroup, op: &str) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(format!("{op}: subgroups of different groups")));
        }
        Ok(())
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.ambient.generators(), "element length mismatch");
        self.saturated_matrix().solve(v).is_some()
    }

    /// Coordinates of v in terms of this subgroup's generators, modulo the
    /// ambient relations. None when v does not belong to the subgroup.
    pub fn express(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let x = self.saturated_matrix().solve(v)?;
        Some(x[..self.generators.len()].to_vec())
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> Result<bool> {
        self.check_same_ambient(other, "is_subset_of")?;
        Ok(self.generators.iter().all(|g| other.contains(g)))
    }

    pub fn equals(&self, other: &Subgroup) -> Result<bool> {
        Ok(self.is_subset_of(other)? && other.is_subset_of(self)?)
    }

    pub fn sum(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_same_ambient(other, "sum")?;
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ok(Subgroup { ambient: self.ambient.clone(), generators: gens })
    }

    pub fn intersection(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_same_ambient(other, "intersection")?;
        let a = self.saturated_matrix();
        let b = other.saturated_matrix();
        let stacked = a.hstack(&(-&b));
        let mut gens = Vec::new();
        for z in stacked.kernel() {
            let x = &z[..a.cols()];
            let g = a.mul_vec(x);
            if !self.ambient.is_zero_element(&g) {
                gens.push(g);
            }
        }
        Ok(Subgroup { ambient: self.ambient.clone(), generators: gens })
    }

    /// Image of this subgroup under a morphism out of the ambient group.
    pub fn image_under(&self, f: &Morphism) -> Result<Subgroup> {
        if f.source() != &self.ambient {
            return Err(Error::AmbientMismatch("image_under: morphism source mismatch".into()));
        }
        let gens = self.generators.iter().map(|g| f.apply(g)).collect();
        Subgroup::new(f.target().clone(), gens)
    }

    /// Preimage of this subgroup under a morphism into the ambient group.
    pub fn preimage_under(&self, f: &Morphism) -> Result<Subgroup> {
        if f.target() != &self.ambient {
            return Err(Error::AmbientMismatch("preimage_under: morphism target mismatch".into()));
        }
        let lat = self.saturated_matrix();
        let stacked = f.matrix().hstack(&(-&lat));
        let nf = f.matrix().cols();
        let mut gens: Vec<Vec<BigInt>> =
            stacked.kernel().into_iter().map(|z| z[..nf].to_vec()).collect();
        gens.retain(|g| !g.iter().all(|x| x.is_zero()));
        Subgroup::new(f.source().clone(), gens)
    }

    pub fn kernel_of(f: &Morphism) -> Subgroup {
        Subgroup::trivial(f.target())
            .preimage_under(f)
            .expect("kernel: ambient matches by construction")
    }

    /// Scale every generator: the subgroup k * S.
    pub fn scaled(&self, k: &BigInt) -> Subgroup {
        let gens = self.generators.iter().map(|g| g.iter().map(|x| x * k).collect()).collect();
        Subgroup { ambient: self.ambient.clone(), generators: gens }
    }

    /// The subgroup k * G of the whole ambient group.
    pub fn multiple_of_full(ambient: &Presentation, k: &BigInt) -> Subgroup {
        Subgroup::full(ambient).scaled(k)
    }

    /// Presentation of this subgroup as an abstract group, with the inclusion
    /// morphism into the ambient group.
    pub fn presentation(&self) -> (Presentation, Morphism) {
        let k = self.generators.len();
        let gmat = self.generator_matrix();
        let stacked = gmat.hstack(self.ambient.relations());
        let rel_cols: Vec<Vec<BigInt>> =
            stacked.kernel().into_iter().map(|z| z[..k].to_vec()).collect();
        let rel = IntMatrix::from_columns(k, &rel_cols);
        let pres = Presentation::new(k, rel).expect("subgroup presentation");
        let incl = Morphism::new(pres.clone(), self.ambient.clone(), gmat)
            .expect("inclusion is well defined");
        (pres, incl)
    }

    /// Canonical form (rank, torsion) of the subgroup as an abstract group.
    pub fn canonical_form(&self) -> (usize, Vec<BigInt>) {
        self.presentation().0.canonical_form()
    }

    /// Presentation of ambient / self, with the projection morphism.
    pub fn quotient(&self) -> (Presentation, Morphism) {
        let rel = self.ambient.relations().hstack(&self.generator_matrix());
        let q = Presentation::new(self.ambient.generators(), rel).expect("quotient presentation");
        let proj = Morphism::new(
            self.ambient.clone(),
            q.clone(),
            IntMatrix::identity(self.ambient.generators()),
        )
        .expect("projection is well defined");
        (q, proj)
    }
}

/// Presentation of z / b for nested subgroups b <= z of a common ambient
/// group: generators are the generators of z, with relations from z itself
/// plus an expression of every generator of b. Returns the presentation and
/// the projection sending an ambient element of z to its class.
pub fn subquotient(z: &Subgroup, b: &Subgroup) -> Result<(Presentation, SubquotientMap)> {
    if z.ambient() != b.ambient() {
        return Err(Error::AmbientMismatch("subquotient: different ambient groups".into()));
    }
    let k = z.generators().len();
    let (zpres, _) = z.presentation();
    let mut rel_cols: Vec<Vec<BigInt>> = zpres.relations().columns();
    for g in b.generators() {
        let coords = z.express(g).ok_or_else(|| {
            Error::Precondition("subquotient: denominator is not contained in numerator".into())
        })?;
        rel_cols.push(coords);
    }
    let rel = IntMatrix::from_columns(k, &rel_cols);
    let pres = Presentation::new(k, rel)?;
    let map = SubquotientMap { z: z.clone(), quotient: pres.clone() };
    Ok((pres, map))
}

/// Sends ambient elements of a subgroup z to their classes in z / b.
#[derive(Clone, Debug)]
pub struct SubquotientMap {
    z: Subgroup,
    quotient: Presentation,
}

impl SubquotientMap {
    pub fn quotient(&self) -> &Presentation {
        &self.quotient
    }

    pub fn numerator(&self) -> &Subgroup {
        &self.z
    }

    /// Class of an ambient element; None when it lies outside z.
    pub fn project(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        self.z.express(v)
    }

    /// Lift a class back to an ambient representative.
    pub fn lift(&self, coords: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(coords.len(), self.z.generators().len(), "class coordinate mismatch");
        let mut v = vec![BigInt::zero(); self.z.ambient().generators()];
        for (c, g) in coords.iter().zip(self.z.generators()) {
            for (vi, gi) in v.iter_mut().zip(g) {
                *vi += c * gi;
            }
        }
        v
    }
}
