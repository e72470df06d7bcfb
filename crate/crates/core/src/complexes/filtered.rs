use num_bigint::BigInt;

use crate::abelian::{Morphism, Presentation, Subgroup};
use crate::error::{Error, Result};

use super::complex::{CochainComplex, ComplexMap};

/// A cochain complex with a bounded decreasing filtration
/// C^k = F^0 ⊇ F^1 ⊇ … ⊇ F^L ⊇ F^{L+1} = 0 in every degree. Only
/// F^1, …, F^L are stored; F^0 and F^{L+1} are implicit. Decrease and
/// d-compatibility are validated at construction.
#[derive(Clone, Debug)]
pub struct FilteredComplex {
    complex: CochainComplex,
    length: usize,
    /// filtration[i][p - 1] = F^p C^{k_min + i} for p = 1..=length.
    filtration: Vec<Vec<Subgroup>>,
}

impl FilteredComplex {
    pub fn new(
        complex: CochainComplex,
        length: usize,
        filtration: Vec<Vec<Subgroup>>,
    ) -> Result<Self> {
        let n_degrees = (complex.k_max() - complex.k_min() + 1) as usize;
        if filtration.len() != n_degrees {
            return Err(Error::Shape(format!(
                "filtration covers {} degrees, complex has {n_degrees}",
                filtration.len()
            )));
        }
        for (i, steps) in filtration.iter().enumerate() {
            let k = complex.k_min() + i as i64;
            let ambient = complex.group(k).expect("degree in range");
            if steps.len() != length {
                return Err(Error::Shape(format!(
                    "degree {k} has {} filtration steps, expected {length}",
                    steps.len()
                )));
            }
            for (p, s) in steps.iter().enumerate() {
                if s.ambient() != ambient {
                    return Err(Error::AmbientMismatch(format!(
                        "filtration step F^{} at degree {k} has wrong ambient group",
                        p + 1
                    )));
                }
            }
            for p in 1..length {
                if !steps[p].is_subset_of(&steps[p - 1])? {
                    return Err(Error::Validation(format!(
                        "filtration not decreasing at degree {k}: F^{} is not inside F^{}",
                        p + 1,
                        p
                    )));
                }
            }
        }
        let fc = FilteredComplex { complex, length, filtration };
        for k in fc.complex.degrees() {
            if let Some(d) = fc.complex.differential(k) {
                for p in 1..=length as i64 {
                    let image = fc.step(k, p).image_under(d)?;
                    if !image.is_subset_of(&fc.step(k + 1, p))? {
                        return Err(Error::Validation(format!(
                            "differential does not preserve F^{p} at degree {k}"
                        )));
                    }
                }
            }
        }
        Ok(fc)
    }

    /// The trivial filtration F^0 = C ⊃ F^1 = 0 (length 0: nothing stored).
    pub fn trivial(complex: CochainComplex) -> Self {
        let n = (complex.k_max() - complex.k_min() + 1) as usize;
        FilteredComplex { complex, length: 0, filtration: vec![vec![]; n] }
    }

    pub fn complex(&self) -> &CochainComplex {
        &self.complex
    }

    pub fn length(&self) -> usize {
        self.length
    }

    fn step(&self, k: i64, p: i64) -> Subgroup {
        self.filtration_subgroup(k, p)
    }

    /// F^p C^k with the conventions F^p = C^k for p <= 0 and F^p = 0 for
    /// p > length; degrees outside the range carry the trivial group.
    pub fn filtration_subgroup(&self, k: i64, p: i64) -> Subgroup {
        let ambient = self.complex.group_or_trivial(k);
        if self.complex.group(k).is_none() {
            return Subgroup::trivial(&ambient);
        }
        if p <= 0 {
            return Subgroup::full(&ambient);
        }
        if p > self.length as i64 {
            return Subgroup::trivial(&ambient);
        }
        let i = (k - self.complex.k_min()) as usize;
        self.filtration[i][(p - 1) as usize].clone()
    }
}

/// A map of filtered complexes: a complex map that additionally carries
/// F^p into F^p in every degree (validated at construction).
#[derive(Clone, Debug)]
pub struct FilteredMap {
    map: ComplexMap,
    source: FilteredComplex,
    target: FilteredComplex,
}

impl FilteredMap {
    pub fn new(source: FilteredComplex, target: FilteredComplex, maps: Vec<Morphism>) -> Result<Self> {
        if source.length != target.length {
            return Err(Error::Shape("filtered map: filtration lengths differ".into()));
        }
        let map = ComplexMap::new(source.complex.clone(), target.complex.clone(), maps)?;
        for k in source.complex.degrees() {
            let f = map.degree_map(k).expect("degree in range");
            for p in 1..=source.length as i64 {
                let image = source.step(k, p).image_under(f)?;
                if !image.is_subset_of(&target.step(k, p))? {
                    return Err(Error::NotWellDefined(format!(
                        "map does not preserve F^{p} at degree {k}"
                    )));
                }
            }
        }
        Ok(FilteredMap { map, source, target })
    }

    pub fn source(&self) -> &FilteredComplex {
        &self.source
    }

    pub fn target(&self) -> &FilteredComplex {
        &self.target
    }

    pub fn complex_map(&self) -> &ComplexMap {
        &self.map
    }

    pub fn degree_map(&self, k: i64) -> Option<&Morphism> {
        self.map.degree_map(k)
    }
}

/// Convenience: subgroup generated by integer row vectors.
pub fn subgroup_from_rows(ambient: &Presentation, rows: &[Vec<i64>]) -> Result<Subgroup> {
    let gens = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    Subgroup::new(ambient.clone(), gens)
}
