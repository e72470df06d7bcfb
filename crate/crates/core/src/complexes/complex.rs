use num_bigint::BigInt;

use crate::abelian::{subquotient, ExponentValue, Morphism, Presentation, Subgroup, SubquotientMap};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// A bounded cochain complex of finitely generated abelian groups. The
/// invariant d ∘ d = 0 is validated at construction.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    k_min: i64,
    groups: Vec<Presentation>,
    /// differentials[i]: groups[i] -> groups[i + 1]
    differentials: Vec<Morphism>,
}

impl CochainComplex {
    pub fn new(k_min: i64, groups: Vec<Presentation>, differentials: Vec<Morphism>) -> Result<Self> {
        if groups.is_empty() {
            return Err(Error::Invalid("complex must have at least one degree".into()));
        }
        if differentials.len() + 1 != groups.len() {
            return Err(Error::Shape(format!(
                "{} groups require {} differentials, got {}",
                groups.len(),
                groups.len() - 1,
                differentials.len()
            )));
        }
        for (i, d) in differentials.iter().enumerate() {
            if d.source() != &groups[i] || d.target() != &groups[i + 1] {
                return Err(Error::Shape(format!(
                    "differential {i} does not map degree {} to degree {}",
                    k_min + i as i64,
                    k_min + i as i64 + 1
                )));
            }
        }
        for i in 0..differentials.len().saturating_sub(1) {
            let dd = differentials[i + 1].compose(&differentials[i])?;
            if !dd.is_zero_map() {
                return Err(Error::Validation(format!(
                    "d ∘ d is nonzero starting at degree {}",
                    k_min + i as i64
                )));
            }
        }
        Ok(CochainComplex { k_min, groups, differentials })
    }

    /// A complex concentrated in one degree with no differentials.
    pub fn single(k: i64, group: Presentation) -> Self {
        CochainComplex { k_min: k, groups: vec![group], differentials: vec![] }
    }

    pub fn k_min(&self) -> i64 {
        self.k_min
    }

    pub fn k_max(&self) -> i64 {
        self.k_min + self.groups.len() as i64 - 1
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> {
        self.k_min..=self.k_max()
    }

    fn index(&self, k: i64) -> Option<usize> {
        if k < self.k_min || k > self.k_max() {
            None
        } else {
            Some((k - self.k_min) as usize)
        }
    }

    pub fn group(&self, k: i64) -> Option<&Presentation> {
        self.index(k).map(|i| &self.groups[i])
    }

    /// The group at degree k, or the trivial group outside the degree range.
    pub fn group_or_trivial(&self, k: i64) -> Presentation {
        self.group(k).cloned().unwrap_or_else(Presentation::trivial)
    }

    /// d^k when both k and k + 1 lie in the degree range.
    pub fn differential(&self, k: i64) -> Option<&Morphism> {
        let i = self.index(k)?;
        self.differentials.get(i)
    }

    /// ker d^k as a subgroup of C^k (the whole group at the top degree).
    pub fn cocycles(&self, k: i64) -> Subgroup {
        let ambient = self.group_or_trivial(k);
        match self.differential(k) {
            Some(d) => Subgroup::kernel_of(d),
            None => Subgroup::full(&ambient),
        }
    }

    /// im d^{k-1} as a subgroup of C^k (trivial at the bottom degree).
    pub fn coboundaries(&self, k: i64) -> Subgroup {
        match self.differential(k - 1) {
            Some(d) => d.image(),
            None => Subgroup::trivial(&self.group_or_trivial(k)),
        }
    }

    /// H^k = ker d^k / im d^{k-1}, with the projection from cocycles.
    pub fn cohomology(&self, k: i64) -> Result<(Presentation, SubquotientMap)> {
        subquotient(&self.cocycles(k), &self.coboundaries(k))
    }

    pub fn cohomology_all(&self) -> Result<Vec<(i64, Presentation)>> {
        self.degrees().map(|k| Ok((k, self.cohomology(k)?.0))).collect()
    }

    /// Betti number of H^k (rank over Q).
    pub fn betti(&self, k: i64) -> Result<usize> {
        Ok(self.cohomology(k)?.0.rank())
    }

    /// Does the rationalized differential d^k vanish, i.e. does the image of
    /// d^k lie in the torsion of C^{k+1}?
    pub fn is_dq_zero(&self, k: i64) -> bool {
        match self.differential(k) {
            Some(d) => d.lattice_part().matrix().is_zero(),
            None => true,
        }
    }

    pub fn is_dq_zero_all(&self) -> Vec<(i64, bool)> {
        self.degrees().map(|k| (k, self.is_dq_zero(k))).collect()
    }

    pub fn all_dq_zero(&self) -> bool {
        self.degrees().all(|k| self.is_dq_zero(k))
    }

    fn require_dq_zero(&self) -> Result<()> {
        for k in self.degrees() {
            if !self.is_dq_zero(k) {
                return Err(Error::Precondition(format!(
                    "rationalized differential is nonzero at degree {k}"
                )));
            }
        }
        Ok(())
    }

    /// For a complex with vanishing rational differentials: reports, per
    /// degree, exp Tor H^k against exp Tor C^k. The inequality
    /// exp Tor H^k <= exp Tor C^k holds because Tor H^k is a subquotient
    /// of Tor C^k.
    pub fn torsion_comparison(&self) -> Result<Vec<TorsionReport>> {
        self.require_dq_zero()?;
        let mut out = Vec::new();
        for k in self.degrees() {
            let h = self.cohomology(k)?.0;
            let c = self.group(k).expect("degree in range");
            let exp_tor_h = h.torsion_exponent();
            let exp_tor_c = c.torsion_exponent();
            let holds = exp_tor_h <= exp_tor_c;
            out.push(TorsionReport { degree: k, exp_tor_h, exp_tor_c, holds });
        }
        Ok(out)
    }

    /// For a complex with vanishing rational differentials: the natural
    /// injection H^k(C)_Z -> C^k_Z between torsion-free quotients, together
    /// with its exponent and the bound exp <= exp Tor C^{k+1}.
    pub fn lattice_inclusion(&self, k: i64) -> Result<LatticeInclusion> {
        self.require_dq_zero()?;
        let c = self
            .group(k)
            .ok_or_else(|| Error::Invalid(format!("degree {k} out of range")))?;
        let (h, hmap) = self.cohomology(k)?;
        // generator i of H^k lifts to the i-th generator of the cocycle
        // subgroup; project that ambient vector to the free quotient of C^k.
        let gens = hmap.numerator().generator_matrix();
        let matrix = &(&c.free_projection() * &gens) * &h.free_section();
        let map = Morphism::new(Presentation::free(h.rank()), Presentation::free(c.rank()), matrix)
            .expect("source is free");
        if Subgroup::kernel_of(&map).canonical_form() != (0, vec![]) {
            return Err(Error::Validation(format!(
                "lattice inclusion at degree {k} is not injective"
            )));
        }
        let exponent = map.exponent();
        let bound = self.group_or_trivial(k + 1).torsion_exponent();
        let holds = match exponent.finite() {
            Some(e) => e <= &bound,
            None => false,
        };
        Ok(LatticeInclusion { degree: k, map, exponent, bound, holds })
    }
}

#[derive(Clone, Debug)]
pub struct TorsionReport {
    pub degree: i64,
    pub exp_tor_h: BigInt,
    pub exp_tor_c: BigInt,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct LatticeInclusion {
    pub degree: i64,
    /// H^k(C)_Z -> C^k_Z between free presentations.
    pub map: Morphism,
    pub exponent: ExponentValue,
    /// exp Tor C^{k+1}.
    pub bound: BigInt,
    pub holds: bool,
}

/// A degreewise map of cochain complexes commuting with the differentials
/// (validated at construction). Source and target must share the degree range.
#[derive(Clone, Debug)]
pub struct ComplexMap {
    source: CochainComplex,
    target: CochainComplex,
    maps: Vec<Morphism>,
}

impl ComplexMap {
    pub fn new(source: CochainComplex, target: CochainComplex, maps: Vec<Morphism>) -> Result<Self> {
        if source.k_min != target.k_min || source.groups.len() != target.groups.len() {
            return Err(Error::Shape("complex map: degree ranges differ".into()));
        }
        if maps.len() != source.groups.len() {
            return Err(Error::Shape(format!(
                "complex map needs {} degree maps, got {}",
                source.groups.len(),
                maps.len()
            )));
        }
        for (i, f) in maps.iter().enumerate() {
            if f.source() != &source.groups[i] || f.target() != &target.groups[i] {
                return Err(Error::Shape(format!("degree map {i} has wrong endpoints")));
            }
        }
        for i in 0..source.differentials.len() {
            let left = maps[i + 1].compose(&source.differentials[i])?;
            let right = target.differentials[i].compose(&maps[i])?;
            if !left.equals(&right) {
                return Err(Error::NotWellDefined(format!(
                    "complex map does not commute with d at degree {}",
                    source.k_min + i as i64
                )));
            }
        }
        Ok(ComplexMap { source, target, maps })
    }

    pub fn source(&self) -> &CochainComplex {
        &self.source
    }

    pub fn target(&self) -> &CochainComplex {
        &self.target
    }

    pub fn degree_map(&self, k: i64) -> Option<&Morphism> {
        self.source.index(k).map(|i| &self.maps[i])
    }

    /// The induced map H^k(source) -> H^k(target).
    pub fn induced_cohomology(&self, k: i64) -> Result<Morphism> {
        let f = self
            .degree_map(k)
            .ok_or_else(|| Error::Invalid(format!("degree {k} out of range")))?;
        let (hs, smap) = self.source.cohomology(k)?;
        let (ht, tmap) = self.target.cohomology(k)?;
        let mut cols = Vec::new();
        for g in smap.numerator().generators() {
            let img = f.apply(g);
            let coords = tmap.project(&img).ok_or_else(|| {
                Error::Validation("image of a cocycle is not a cocycle".into())
            })?;
            cols.push(coords);
        }
        let matrix = IntMatrix::from_columns(ht.generators(), &cols);
        Morphism::new(hs, ht, matrix)
    }

    /// Naturality of the lattice inclusion: f_Z ∘ ι_source = ι_target ∘ H(f)_Z.
    pub fn lattice_naturality(&self, k: i64) -> Result<bool> {
        let iota_s = self.source.lattice_inclusion(k)?;
        let iota_t = self.target.lattice_inclusion(k)?;
        let f_z = self
            .degree_map(k)
            .ok_or_else(|| Error::Invalid(format!("degree {k} out of range")))?
            .lattice_part();
        let hf_z = self.induced_cohomology(k)?.lattice_part();
        let left = f_z.compose(&iota_s.map)?;
        let right = iota_t.map.compose(&hf_z)?;
        Ok(left.equals(&right))
    }
}
