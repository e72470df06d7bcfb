use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::abelian::Morphism;
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

use super::polynomial::{char_poly, cyclotomic, cyclotomic_orders, IntPoly};

/// Outcome of the quasi-unipotence test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuasiUnipotence {
    /// Minimal e with A^e unipotent: the lcm of the orders d of the
    /// cyclotomic factors Phi_d of the characteristic polynomial.
    Yes { exponent: u64, cyclotomic_orders: Vec<u64> },
    /// The residual factor of the characteristic polynomial after removing
    /// every cyclotomic factor in range; it certifies an eigenvalue that is
    /// not a root of unity.
    No { residual: IntPoly },
}

/// Order of a matrix or automorphism: finite with the minimal exponent, or
/// infinite with an explicit witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderResult {
    Finite(u64),
    Infinite(InfiniteWitness),
}

impl OrderResult {
    pub fn finite(&self) -> Option<u64> {
        match self {
            OrderResult::Finite(e) => Some(*e),
            OrderResult::Infinite(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InfiniteWitness {
    /// Non-cyclotomic factor of the characteristic polynomial.
    NonCyclotomicFactor(IntPoly),
    /// A vector v with (A^exponent - Id) v != 0: the unipotent part of
    /// A^exponent is nontrivial, so no power of A is the identity.
    UnipotentPart { exponent: u64, vector: Vec<BigInt> },
}

fn require_gl(a: &IntMatrix) -> Result<()> {
    if !a.is_square() {
        return Err(Error::Shape("matrix must be square".into()));
    }
    if !a.is_unimodular() {
        return Err(Error::Precondition("matrix is not invertible over the integers".into()));
    }
    Ok(())
}

fn lcm_checked(a: u64, b: u64) -> Result<u64> {
    (a / a.gcd(&b))
        .checked_mul(b)
        .ok_or_else(|| Error::Invalid("cyclotomic order lcm overflows".into()))
}

/// Is A quasi-unipotent, i.e. are all eigenvalues roots of unity? Decided by
/// stripping cyclotomic factors Phi_d, phi(d) <= m, from the characteristic
/// polynomial.
pub fn is_quasi_unipotent(a: &IntMatrix) -> Result<QuasiUnipotence> {
    require_gl(a)?;
    let m = a.rows();
    let mut p = char_poly(a)?;
    let mut orders = Vec::new();
    let mut exponent = 1u64;
    for d in cyclotomic_orders(m) {
        let phi = cyclotomic(d);
        let mut seen = false;
        while let Some(q) = p.div_exact(&phi) {
            p = q;
            seen = true;
        }
        if seen {
            orders.push(d);
            exponent = lcm_checked(exponent, d)?;
        }
    }
    if p.is_constant() {
        Ok(QuasiUnipotence::Yes { exponent, cyclotomic_orders: orders })
    } else {
        Ok(QuasiUnipotence::No { residual: p })
    }
}

fn divisors_ascending(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    out.sort_unstable();
    out
}

/// Minimal e with A^e = Id, or an infiniteness witness.
pub fn finite_order(a: &IntMatrix) -> Result<OrderResult> {
    let e0 = match is_quasi_unipotent(a)? {
        QuasiUnipotence::Yes { exponent, .. } => exponent,
        QuasiUnipotence::No { residual } => {
            return Ok(OrderResult::Infinite(InfiniteWitness::NonCyclotomicFactor(residual)));
        }
    };
    let c = &a.pow(e0) - &IntMatrix::identity(a.rows());
    if !c.is_zero() {
        // first standard basis vector not killed by C
        let j = (0..c.cols())
            .find(|&j| c.column(j).iter().any(|x| !x.is_zero()))
            .expect("nonzero matrix has a nonzero column");
        let mut vector = vec![BigInt::zero(); c.cols()];
        vector[j] = BigInt::one();
        return Ok(OrderResult::Infinite(InfiniteWitness::UnipotentPart { exponent: e0, vector }));
    }
    for d in divisors_ascending(e0) {
        if a.pow(d) == IntMatrix::identity(a.rows()) {
            return Ok(OrderResult::Finite(d));
        }
    }
    unreachable!("A^e0 = Id, so some divisor of e0 is the order")
}

/// Order of an automorphism of a f.g. abelian group. Finite iff the induced
/// map on the free quotient has finite order e; the order then divides
/// h * e * t with h = |Tor G| and t the order of the restriction to torsion.
pub fn automorphism_order(f: &Morphism) -> Result<OrderResult> {
    if !f.is_automorphism() {
        return Err(Error::Precondition("morphism is not an automorphism".into()));
    }
    let g = f.source();
    let fz = f.lattice_part();
    let e = if g.rank() > 0 {
        match finite_order(fz.matrix())? {
            OrderResult::Finite(e) => e,
            OrderResult::Infinite(w) => return Ok(OrderResult::Infinite(w)),
        }
    } else {
        1
    };
    let h: BigInt = g.torsion().iter().product();
    let h: u64 = h
        .to_string()
        .parse()
        .map_err(|_| Error::Precondition("torsion subgroup too large".into()))?;
    // order of f restricted to the torsion subgroup, by iteration
    let tor_gens = g.torsion_generators();
    let mut t = 1u64;
    if !tor_gens.is_empty() {
        let mut images: Vec<Vec<BigInt>> = tor_gens.iter().map(|v| f.apply(v)).collect();
        let cap = 1_000_000u64;
        loop {
            if images.iter().zip(&tor_gens).all(|(a, b)| g.elements_equal(a, b)) {
                break;
            }
            t += 1;
            if t > cap {
                return Err(Error::BudgetExceeded(
                    "torsion restriction order exceeds iteration cap".into(),
                ));
            }
            for img in images.iter_mut() {
                *img = f.apply(img);
            }
        }
    }
    let bound = e
        .checked_mul(h)
        .and_then(|x| x.checked_mul(t))
        .ok_or_else(|| Error::Invalid("order bound overflows".into()))?;
    let id = IntMatrix::identity(g.generators());
    for d in divisors_ascending(bound) {
        let power = f.matrix().pow(d);
        let is_identity = (0..power.cols())
            .all(|j| g.elements_equal(&power.column(j), &id.column(j)));
        if is_identity {
            return Ok(OrderResult::Finite(d));
        }
    }
    Err(Error::Validation(
        "automorphism order exceeds the h*e*t bound; presentation is inconsistent".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::Presentation;

    #[test]
    fn unipotent_matrix_has_exponent_one() {
        let b = IntMatrix::from_rows(&[&[1, 1], &[0, 1]]);
        match is_quasi_unipotent(&b).unwrap() {
            QuasiUnipotence::Yes { exponent, .. } => assert_eq!(exponent, 1),
            _ => panic!("unipotent matrix rejected"),
        }
    }

    #[test]
    fn rotation_has_exponent_four() {
        let rot = IntMatrix::from_rows(&[&[0, -1], &[1, 0]]);
        match is_quasi_unipotent(&rot).unwrap() {
            QuasiUnipotence::Yes { exponent, cyclotomic_orders } => {
                assert_eq!(exponent, 4);
                assert_eq!(cyclotomic_orders, vec![4]);
            }
            _ => panic!("rotation rejected"),
        }
        assert_eq!(finite_order(&rot).unwrap(), OrderResult::Finite(4));
    }

    #[test]
    fn hyperbolic_matrix_is_not_quasi_unipotent() {
        // char poly x^2 - 3x + 1, roots (3 +- sqrt 5)/2 off the unit circle
        let m = IntMatrix::from_rows(&[&[2, 1], &[1, 1]]);
        match is_quasi_unipotent(&m).unwrap() {
            QuasiUnipotence::No { residual } => {
                assert_eq!(residual, IntPoly::from_i64(&[1, -3, 1]));
            }
            _ => panic!("hyperbolic matrix accepted"),
        }
    }

    #[test]
    fn shear_has_infinite_order_with_witness() {
        let b = IntMatrix::from_rows(&[&[1, 1], &[0, 1]]);
        match finite_order(&b).unwrap() {
            OrderResult::Infinite(InfiniteWitness::UnipotentPart { exponent, vector }) => {
                assert_eq!(exponent, 1);
                let c = &b - &IntMatrix::identity(2);
                assert!(c.mul_vec(&vector).iter().any(|x| !x.is_zero()));
            }
            other => panic!("expected unipotent witness, got {other:?}"),
        }
    }

    #[test]
    fn order_three_matrix() {
        let m = IntMatrix::from_rows(&[&[0, -1], &[1, -1]]);
        assert_eq!(finite_order(&m).unwrap(), OrderResult::Finite(3));
        assert_eq!(m.pow(3), IntMatrix::identity(2));
    }

    #[test]
    fn non_unimodular_rejected() {
        let m = IntMatrix::from_rows(&[&[2, 0], &[0, 1]]);
        assert!(is_quasi_unipotent(&m).is_err());
        assert!(finite_order(&m).is_err());
    }

    #[test]
    fn automorphism_identity_has_order_one() {
        let g = Presentation::from_invariants(&[4], 2);
        let f = Morphism::identity(&g);
        assert_eq!(automorphism_order(&f).unwrap(), OrderResult::Finite(1));
    }

    #[test]
    fn torsion_mixing_automorphism_has_order_two() {
        // G = Z + Z/2 presented with the free generator first:
        // f(a, t) = (a, t + a mod 2)
        let g = Presentation::new(2, IntMatrix::from_rows(&[&[0], &[2]])).unwrap();
        let f = Morphism::new(g.clone(), g, IntMatrix::from_rows(&[&[1, 0], &[1, 1]])).unwrap();
        assert_eq!(automorphism_order(&f).unwrap(), OrderResult::Finite(2));
    }

    #[test]
    fn infinite_free_part_detected() {
        // [[1,1],[0,1]] on Z^2 extended by identity on Z/3
        let g = Presentation::new(3, IntMatrix::from_rows(&[&[0], &[0], &[3]])).unwrap();
        let f = Morphism::new(
            g.clone(),
            g,
            IntMatrix::from_rows(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]),
        )
        .unwrap();
        assert!(matches!(automorphism_order(&f).unwrap(), OrderResult::Infinite(_)));
    }

    #[test]
    fn negation_on_torsion_only_group() {
        let g = Presentation::from_invariants(&[5], 0);
        let f = Morphism::new(g.clone(), g, IntMatrix::from_rows(&[&[-1]])).unwrap();
        assert_eq!(automorphism_order(&f).unwrap(), OrderResult::Finite(2));
    }
}
