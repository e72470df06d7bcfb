use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::rational::QMatrix;

fn binomial(s: u64, j: u64) -> BigInt {
    if j > s {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..j {
        num *= BigInt::from(s - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// Outcome of checking the binomial identities between a unipotent matrix B
/// and its power A = B^s: with C = A - Id and D = B - Id (both nilpotent),
/// C = sum_{j>=1} (s choose j) D^j holds exactly, and conversely D is a
/// rational polynomial in C.
#[derive(Clone, Debug)]
pub struct RootBinomialReport {
    pub forward_holds: bool,
    /// Coefficients a_j with D = sum_j a_j C^j, recovered exactly over Q.
    pub backward_coefficients: Vec<BigRational>,
    pub backward_holds: bool,
}

impl RootBinomialReport {
    pub fn all_hold(&self) -> bool {
        self.forward_holds && self.backward_holds
    }
}

fn vectorize(m: &IntMatrix) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(m.rows() * m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.push(BigRational::from_integer(m.get(i, j).clone()));
        }
    }
    out
}

pub fn verify_root_binomial(b: &IntMatrix, s: u64) -> Result<RootBinomialReport> {
    if !b.is_square() {
        return Err(Error::Shape("matrix must be square".into()));
    }
    if s == 0 {
        return Err(Error::Invalid("exponent s must be at least 1".into()));
    }
    let m = b.rows();
    let d = b - &IntMatrix::identity(m);
    if !d.pow(m as u64).is_zero() {
        return Err(Error::Precondition("matrix is not unipotent".into()));
    }
    let a = b.pow(s);
    let c = &a - &IntMatrix::identity(m);
    // forward: C = sum_{j=1}^{m-1} (s choose j) D^j
    let mut sum = IntMatrix::zero(m, m);
    let mut dpow = IntMatrix::identity(m);
    for j in 1..m.max(2) as u64 {
        dpow = &dpow * &d;
        sum = &sum + &dpow.scale(&binomial(s, j));
    }
    let forward_holds = sum == c;
    // backward: solve D = sum_{j=1}^{m-1} a_j C^j over Q (the system is
    // triangular in the nilpotency filtration, hence solvable)
    let ncoef = (m.max(2) - 1) as usize;
    let mut cols = Vec::with_capacity(ncoef);
    let mut cpow = IntMatrix::identity(m);
    for _ in 0..ncoef {
        cpow = &cpow * &c;
        cols.push(vectorize(&cpow));
    }
    let system = QMatrix::from_columns(m * m, &cols);
    let rhs = vectorize(&d);
    let (backward_coefficients, backward_holds) = match system.solve(&rhs) {
        Some(coeffs) => {
            let recovered = system.mul_vec(&coeffs);
            (coeffs, recovered == rhs)
        }
        None => (vec![], false),
    };
    Ok(RootBinomialReport { forward_holds, backward_coefficients, backward_holds })
}

/// Exhaustive search for B with B^r = A over all integer matrices with
/// entries in [-entry_bound, entry_bound] and |det B| = 1, in lexicographic
/// entry order. Ok(None) means no root exists in the box; exceeding the node
/// budget is a distinct error.
pub fn find_root_bruteforce(
    a: &IntMatrix,
    r: u64,
    entry_bound: i64,
    budget: u64,
) -> Result<Option<IntMatrix>> {
    if !a.is_square() {
        return Err(Error::Shape("matrix must be square".into()));
    }
    if !a.is_unimodular() {
        return Err(Error::Precondition("matrix is not invertible over the integers".into()));
    }
    if r == 0 {
        return Err(Error::Invalid("root index r must be at least 1".into()));
    }
    if entry_bound < 0 {
        return Err(Error::Invalid("entry bound must be nonnegative".into()));
    }
    let m = a.rows();
    let n = m * m;
    let mut entries = vec![-entry_bound; n];
    let mut nodes = 0u64;
    loop {
        nodes += 1;
        if nodes > budget {
            return Err(Error::BudgetExceeded(format!(
                "root search exhausted its budget of {budget} candidates"
            )));
        }
        let b = IntMatrix::new(m, m, entries.iter().map(|&x| BigInt::from(x)).collect())
            .expect("shape matches");
        if b.is_unimodular() && b.pow(r) == *a {
            return Ok(Some(b));
        }
        // next candidate in lexicographic order
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            if entries[i] < entry_bound {
                entries[i] += 1;
                for e in entries[i + 1..].iter_mut() {
                    *e = -entry_bound;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(7, 0), BigInt::one());
    }

    #[test]
    fn root_binomial_identity_cases() {
        // B = Id: C = D = 0
        let rep = verify_root_binomial(&IntMatrix::identity(3), 4).unwrap();
        assert!(rep.forward_holds && rep.backward_holds);

        // B = [[1,1],[0,1]], s = 5: C = 5 D
        let b = IntMatrix::from_rows(&[&[1, 1], &[0, 1]]);
        let rep = verify_root_binomial(&b, 5).unwrap();
        assert!(rep.all_hold());
        assert_eq!(
            rep.backward_coefficients[0],
            BigRational::new(BigInt::one(), BigInt::from(5))
        );
    }

    #[test]
    fn root_binomial_3x3_unitriangular() {
        let b = IntMatrix::from_rows(&[&[1, 2, -1], &[0, 1, 3], &[0, 0, 1]]);
        for s in 2..=10 {
            let rep = verify_root_binomial(&b, s).unwrap();
            assert!(rep.all_hold(), "s = {s}");
        }
    }

    #[test]
    fn root_binomial_rejects_non_unipotent() {
        let rot = IntMatrix::from_rows(&[&[0, -1], &[1, 0]]);
        assert!(verify_root_binomial(&rot, 2).is_err());
    }

    #[test]
    fn square_root_of_identity_found() {
        let id = IntMatrix::identity(2);
        let b = find_root_bruteforce(&id, 2, 1, 1_000_000).unwrap().unwrap();
        assert_eq!(b.pow(2), id);
    }

    #[test]
    fn no_square_root_of_order_four_rotation() {
        // a square root would have order 8, impossible in GL(2, Z)
        let rot = IntMatrix::from_rows(&[&[0, -1], &[1, 0]]);
        assert_eq!(find_root_bruteforce(&rot, 2, 3, 10_000_000).unwrap(), None);
    }

    #[test]
    fn square_root_of_order_three_matrix_found() {
        let a = IntMatrix::from_rows(&[&[0, -1], &[1, -1]]);
        let b = find_root_bruteforce(&a, 2, 3, 10_000_000).unwrap().unwrap();
        assert_eq!(b.pow(2), a);
        // any such root has order 3 (B = A^2) or 6
        assert_eq!(b.pow(6), IntMatrix::identity(2));
    }

    #[test]
    fn budget_exhaustion_is_distinct_from_absent() {
        let rot = IntMatrix::from_rows(&[&[0, -1], &[1, 0]]);
        match find_root_bruteforce(&rot, 2, 3, 10) {
            Err(Error::BudgetExceeded(_)) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn search_is_deterministic_first_match() {
        let id = IntMatrix::identity(2);
        let b1 = find_root_bruteforce(&id, 2, 1, 1_000_000).unwrap().unwrap();
        let b2 = find_root_bruteforce(&id, 2, 1, 1_000_000).unwrap().unwrap();
        assert_eq!(b1, b2);
    }
}
