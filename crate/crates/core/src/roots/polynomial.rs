use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// Integer polynomial, coefficients stored from the constant term up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        IntPoly { coeffs: vec![BigInt::one()] }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_constant(&self) -> bool {
        self.degree() == 0
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("nonempty")
    }

    /// x^n - 1.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = -BigInt::one();
        coeffs[n] = BigInt::one();
        IntPoly { coeffs }
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    /// Exact division: Some(q) with self = q * divisor, None when the
    /// division leaves a remainder. Requires a divisor with unit leading
    /// coefficient (all our divisors are monic).
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let lead = divisor.leading();
        assert!(lead.abs().is_one(), "divisor must have unit leading coefficient");
        if self.coeffs.iter().all(|c| c.is_zero()) {
            return Some(IntPoly::new(vec![BigInt::zero()]));
        }
        if self.degree() < divisor.degree() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let qdeg = self.degree() - divisor.degree();
        let mut q = vec![BigInt::zero(); qdeg + 1];
        for k in (0..=qdeg).rev() {
            let c = &rem[k + divisor.degree()] / lead;
            if !c.is_zero() {
                for (i, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + i] -= &c * d;
                }
            }
            q[k] = c;
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(IntPoly::new(q))
        } else {
            None
        }
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() && self.degree() > 0 {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                1 if a.is_one() => write!(f, "x")?,
                1 => write!(f, "{a}*x")?,
                _ if a.is_one() => write!(f, "x^{i}")?,
                _ => write!(f, "{a}*x^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Characteristic polynomial det(xI - A) by the Faddeev-LeVerrier recurrence;
/// every division is exact in integers.
pub fn char_poly(a: &IntMatrix) -> Result<IntPoly> {
    if !a.is_square() {
        return Err(Error::Shape("characteristic polynomial needs a square matrix".into()));
    }
    let m = a.rows();
    // p(x) = x^m + c_1 x^{m-1} + ... + c_m
    let mut coeffs = vec![BigInt::zero(); m + 1];
    coeffs[m] = BigInt::one();
    let mut n = a.clone();
    for k in 1..=m {
        let tr: BigInt = (0..m).map(|i| n.get(i, i).clone()).sum();
        let c = -tr / BigInt::from(k as u64);
        coeffs[m - k] = c.clone();
        if k < m {
            let shifted = &n + &IntMatrix::identity(m).scale(&c);
            n = a * &shifted;
        }
    }
    Ok(IntPoly::new(coeffs))
}

fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// The cyclotomic polynomial Phi_d, by exact division of x^d - 1 by all
/// proper Phi_e with e | d.
pub fn cyclotomic(d: u64) -> IntPoly {
    let mut num = IntPoly::x_pow_minus_one(d as usize);
    for e in 1..d {
        if d % e == 0 {
            num = num.div_exact(&cyclotomic(e)).expect("cyclotomic recursion divides exactly");
        }
    }
    num
}

/// All d with phi(d) <= m, ascending: the orders of roots of unity that can
/// appear as eigenvalues of an m x m integer matrix.
pub fn cyclotomic_orders(m: usize) -> Vec<u64> {
    let m = m as u64;
    // phi(d) >= sqrt(d/2), so phi(d) <= m forces d <= 2m^2 + 1
    (1..=2 * m * m + 1).filter(|&d| euler_phi(d) <= m).collect()
}
