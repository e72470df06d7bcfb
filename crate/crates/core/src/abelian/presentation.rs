use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, SnfDecomposition};

/// Exponent of a group or morphism: a positive integer, or infinite when the
/// measured group has positive rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExponentValue {
    Finite(BigInt),
    Infinite,
}

impl ExponentValue {
    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            ExponentValue::Finite(e) => Some(e),
            ExponentValue::Infinite => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExponentValue::Finite(_))
    }

    /// The finite value, or an error naming the context (lemmas that require
    /// finite exponents reject infinite inputs).
    pub fn expect_finite(&self, context: &str) -> Result<BigInt> {
        match self {
            ExponentValue::Finite(e) => Ok(e.clone()),
            ExponentValue::Infinite => Err(Error::InfiniteExponent(context.to_string())),
        }
    }
}

impl fmt::Display for ExponentValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExponentValue::Finite(e) => write!(f, "{e}"),
            ExponentValue::Infinite => write!(f, "infinite"),
        }
    }
}

/// A finitely generated abelian group given as Z^generators / (column lattice
/// of `relations`), with the canonical form cached at construction.
#[derive(Clone)]
pub struct Presentation {
    generators: usize,
    relations: IntMatrix,
    snf: SnfDecomposition,
    rank: usize,
    torsion: Vec<BigInt>,
    free_indices: Vec<usize>,
    torsion_indices: Vec<usize>,
}

impl PartialEq for Presentation {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators && self.relations == other.relations
    }
}
impl Eq for Presentation {}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Presentation(rank {}, torsion {:?})", self.rank, self.torsion)
    }
}

impl Presentation {
    pub fn new(generators: usize, relations: IntMatrix) -> Result<Self> {
        if relations.rows() != generators {
            return Err(Error::Shape(format!(
                "relation matrix has {} rows for {} generators",
                relations.rows(),
                generators
            )));
        }
        let snf = relations.smith_normal_form();
        let diag_len = relations.rows().min(relations.cols());
        let mut rank_count = 0;
        let mut torsion = Vec::new();
        let mut free_indices = Vec::new();
        let mut torsion_indices = Vec::new();
        for i in 0..generators {
            let d = if i < diag_len { snf.d.get(i, i).clone() } else { BigInt::zero() };
            if d.is_zero() {
                rank_count += 1;
                free_indices.push(i);
            } else if !d.is_one() {
                torsion.push(d);
                torsion_indices.push(i);
            }
        }
        Ok(Presentation {
            generators,
            relations,
            snf,
            rank: rank_count,
            torsion,
            free_indices,
            torsion_indices,
        })
    }

    pub fn free(n: usize) -> Self {
        Self::new(n, IntMatrix::zero(n, 0)).expect("free presentation")
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    /// Z/d_1 + ... + Z/d_k + Z^extra_rank, from explicit diagonal relations.
    pub fn from_invariants(torsion: &[i64], extra_rank: usize) -> Self {
        let n = torsion.len() + extra_rank;
        let mut rel = IntMatrix::zero(n, torsion.len());
        for (i, d) in torsion.iter().enumerate() {
            rel.set(i, i, BigInt::from(*d));
        }
        Self::new(n, rel).expect("diagonal presentation")
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn relation_snf(&self) -> &SnfDecomposition {
        &self.snf
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    /// (rank, torsion coefficients in divisibility order).
    pub fn canonical_form(&self) -> (usize, Vec<BigInt>) {
        (self.rank, self.torsion.clone())
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    /// Order of the group when finite.
    pub fn order(&self) -> Option<BigInt> {
        if self.rank > 0 {
            return None;
        }
        Some(self.torsion.iter().product())
    }

    /// lcm of element orders; infinite when the rank is positive.
    pub fn exponent(&self) -> ExponentValue {
        if self.rank > 0 {
            ExponentValue::Infinite
        } else {
            ExponentValue::Finite(self.torsion.last().cloned().unwrap_or_else(BigInt::one))
        }
    }

    /// Exponent of the torsion subgroup (always finite).
    pub fn torsion_exponent(&self) -> BigInt {
        self.torsion.last().cloned().unwrap_or_else(BigInt::one)
    }

    /// Does the vector lie in the relation lattice (i.e. represent zero)?
    pub fn is_zero_element(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.generators, "element length mismatch");
        self.snf.solve(v).is_some()
    }

    pub fn elements_equal(&self, a: &[BigInt], b: &[BigInt]) -> bool {
        let diff: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.is_zero_element(&diff)
    }

    /// Projection matrix onto the free part: a rank x generators matrix P
    /// with P(relations) = 0 inducing G -> G/Tor G = Z^rank.
    pub fn free_projection(&self) -> IntMatrix {
        let mut p = IntMatrix::zero(self.rank, self.generators);
        for (row, &i) in self.free_indices.iter().enumerate() {
            for j in 0..self.generators {
                p.set(row, j, self.snf.u.get(i, j).clone());
            }
        }
        p
    }

    /// Section of the free projection: a generators x rank matrix S with
    /// free_projection * S = identity.
    pub fn free_section(&self) -> IntMatrix {
        let mut s = IntMatrix::zero(self.generators, self.rank);
        for (col, &i) in self.free_indices.iter().enumerate() {
            for j in 0..self.generators {
                s.set(j, col, self.snf.u_inv.get(j, i).clone());
            }
        }
        s
    }

    /// Generators of the torsion subgroup, as ambient coordinate vectors.
    pub fn torsion_generators(&self) -> Vec<Vec<BigInt>> {
        self.torsion_indices.iter().map(|&i| self.snf.u_inv.column(i)).collect()
    }

    /// Enumerate all elements of a finite group, as coordinate vectors.
    /// Intended for small oracle computations.
    pub fn enumerate_elements(&self) -> Result<Vec<Vec<BigInt>>> {
        let order = self
            .order()
            .ok_or_else(|| Error::Precondition("cannot enumerate an infinite group".into()))?;
        let order: u64 = order
            .to_string()
            .parse()
            .map_err(|_| Error::Precondition("group too large to enumerate".into()))?;
        if order > 1_000_000 {
            return Err(Error::Precondition("group too large to enumerate".into()));
        }
        let gens = self.torsion_generators();
        let orders: Vec<u64> = self
            .torsion
            .iter()
            .map(|d| d.to_string().parse().expect("torsion coefficient fits u64"))
            .collect();
        let mut out = Vec::with_capacity(order as usize);
        let mut counters = vec![0u64; gens.len()];
        loop {
            let mut v = vec![BigInt::zero(); self.generators];
            for (c, g) in counters.iter().zip(&gens) {
                let c = BigInt::from(*c);
                for (vi, gi) in v.iter_mut().zip(g) {
                    *vi += &c * gi;
                }
            }
            out.push(v);
            let mut i = 0;
            loop {
                if i == counters.len() {
                    return Ok(out);
                }
                counters[i] += 1;
                if counters[i] < orders[i] {
                    break;
                }
                counters[i] = 0;
                i += 1;
            }
        }
    }

    /// Order of a single element (oracle helper; the group need not be finite,
    /// but the element must be torsion for a finite answer).
    pub fn element_order(&self, v: &[BigInt], cap: u64) -> Option<u64> {
        let mut acc = vec![BigInt::zero(); self.generators];
        for n in 1..=cap {
            for (a, x) in acc.iter_mut().zip(v) {
                *a += x;
            }
            if self.is_zero_element(&acc) {
                return Some(n);
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_free_group() {
        let p = Presentation::free(2);
        assert_eq!(p.canonical_form(), (2, vec![]));
    }

    #[test]
    fn canonical_single_relation() {
        let p = Presentation::new(1, IntMatrix::from_rows(&[&[6]])).unwrap();
        assert_eq!(p.canonical_form(), (0, vec![BigInt::from(6)]));
    }

    #[test]
    fn canonical_diag_2_4() {
        let p = Presentation::new(2, IntMatrix::from_rows(&[&[2, 0], &[0, 4]])).unwrap();
        assert_eq!(p.canonical_form(), (0, vec![BigInt::from(2), BigInt::from(4)]));
    }

    #[test]
    fn exponent_examples() {
        let p = Presentation::from_invariants(&[2, 4], 0);
        assert_eq!(p.exponent(), ExponentValue::Finite(BigInt::from(4)));
        assert_eq!(Presentation::free(1).exponent(), ExponentValue::Infinite);
        // coker diag(6,10) = Z/2 + Z/30
        let p = Presentation::new(2, IntMatrix::from_rows(&[&[6, 0], &[0, 10]])).unwrap();
        assert_eq!(p.canonical_form(), (0, vec![BigInt::from(2), BigInt::from(30)]));
        assert_eq!(p.exponent(), ExponentValue::Finite(BigInt::from(30)));
        // cross-check by enumerating element orders
        let max_ord = p
            .enumerate_elements()
            .unwrap()
            .iter()
            .map(|v| p.element_order(v, 100).unwrap())
            .max()
            .unwrap();
        assert_eq!(max_ord, 30);
    }

    #[test]
    fn free_projection_section_identity() {
        let p = Presentation::new(
            3,
            IntMatrix::from_rows(&[&[2, 0], &[0, 3], &[0, 0]]),
        )
        .unwrap();
        assert_eq!(p.rank(), 1);
        let proj = p.free_projection();
        let sec = p.free_section();
        assert_eq!(&proj * &sec, IntMatrix::identity(1));
        // projection kills relations
        assert!((&proj * p.relations()).is_zero());
    }

    #[test]
    fn enumerate_order() {
        let p = Presentation::from_invariants(&[2, 4], 0);
        assert_eq!(p.enumerate_elements().unwrap().len(), 8);
    }
}
