use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

use super::morphism::Morphism;
use super::subgroup::Subgroup;

/// Which part of the commutative-square exponent lemma to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SquareMode {
    /// h(B) = scalar * B' given; bounds g(A) from both sides.
    ImageEquality,
    /// g(A) <= scalar * A' given; bounds h(B).
    ImageContainment,
    /// exp g <= (exp f)(exp h).
    ExponentProduct,
}

#[derive(Clone, Debug)]
pub struct SquareReport {
    pub mode: SquareMode,
    pub exp_f: BigInt,
    pub exp_f_prime: BigInt,
    /// Checked containments / inequalities, in lemma order; all must be true.
    pub bounds: Vec<(String, bool)>,
}

impl SquareReport {
    pub fn all_hold(&self) -> bool {
        self.bounds.iter().all(|(_, ok)| *ok)
    }
}

fn require_free(p: &crate::abelian::Presentation, name: &str) -> Result<()> {
    if !p.torsion().is_empty() {
        return Err(Error::Precondition(format!("{name} must be a free presentation")));
    }
    Ok(())
}

/// Checks the exponent bounds for a commutative square
///
/// ```text
///   A  --f-->  B
///   |g         |h
///   A' --f'--> B'
/// ```
///
/// with f, f' injective of finite exponent between free groups.
pub fn verify_square_bounds(
    f: &Morphism,
    f_prime: &Morphism,
    g: &Morphism,
    h: &Morphism,
    mode: SquareMode,
    scalar: &BigInt,
) -> Result<SquareReport> {
    require_free(f.source(), "A")?;
    require_free(f.target(), "B")?;
    require_free(f_prime.source(), "A'")?;
    require_free(f_prime.target(), "B'")?;
    if g.source() != f.source() || g.target() != f_prime.source() {
        return Err(Error::AmbientMismatch("g must map A to A'".into()));
    }
    if h.source() != f.target() || h.target() != f_prime.target() {
        return Err(Error::AmbientMismatch("h must map B to B'".into()));
    }
    if !Subgroup::kernel_of(f).canonical_form().eq(&(0, vec![])) {
        return Err(Error::Precondition("f is not injective".into()));
    }
    if !Subgroup::kernel_of(f_prime).canonical_form().eq(&(0, vec![])) {
        return Err(Error::Precondition("f' is not injective".into()));
    }
    let left = f_prime.compose(g)?;
    let right = h.compose(f)?;
    if !left.equals(&right) {
        return Err(Error::Precondition("square does not commute".into()));
    }
    let exp_f = f.exponent().expect_finite("exp f")?;
    let exp_f_prime = f_prime.exponent().expect_finite("exp f'")?;

    let a_prime = f_prime.source();
    let b_prime = f_prime.target();
    let g_image = g.image();
    let h_image = h.image();

    let mut bounds = Vec::new();
    match mode {
        SquareMode::ImageEquality => {
            if scalar.is_zero() {
                return Err(Error::Precondition("scalar must be nonzero".into()));
            }
            let lam_bprime = Subgroup::multiple_of_full(b_prime, scalar);
            if !h_image.equals(&lam_bprime)? {
                return Err(Error::Precondition("h(B) != scalar * B'".into()));
            }
            let lower = Subgroup::multiple_of_full(a_prime, &(&exp_f * scalar));
            bounds.push((
                "(exp f) * scalar * A' <= g(A)".to_string(),
                lower.is_subset_of(&g_image)?,
            ));
            let q = scalar / scalar.gcd(&exp_f_prime);
            let upper = Subgroup::multiple_of_full(a_prime, &q);
            bounds.push((
                "g(A) <= scalar / gcd(scalar, exp f') * A'".to_string(),
                g_image.is_subset_of(&upper)?,
            ));
        }
        SquareMode::ImageContainment => {
            if scalar.is_zero() {
                return Err(Error::Precondition("scalar must be nonzero".into()));
            }
            let mu_aprime = Subgroup::multiple_of_full(a_prime, scalar);
            if !g_image.is_subset_of(&mu_aprime)? {
                return Err(Error::Precondition("g(A) is not contained in scalar * A'".into()));
            }
            let q = scalar / scalar.gcd(&exp_f);
            let upper = Subgroup::multiple_of_full(b_prime, &q);
            bounds.push((
                "h(B) <= scalar / gcd(scalar, exp f) * B'".to_string(),
                h_image.is_subset_of(&upper)?,
            ));
        }
        SquareMode::ExponentProduct => {
            let exp_h = h.exponent().expect_finite("exp h")?;
            let exp_g = g.exponent();
            let ok = match exp_g.finite() {
                Some(e) => e <= &(&exp_f * &exp_h),
                None => false,
            };
            bounds.push(("exp g <= (exp f)(exp h)".to_string(), ok));
        }
    }
    Ok(SquareReport { mode, exp_f, exp_f_prime, bounds })
}

/// Classical Minkowski bound M(n): every finite-order element of GL(n, Z)
/// has order dividing M(n) = prod_p p^(sum_i floor(n / (p^i (p - 1)))).
pub fn minkowski_bound(n: usize) -> BigInt {
    let mut result = BigInt::one();
    if n == 0 {
        return result;
    }
    for p in 2..=(n + 1) {
        if !is_prime(p as u64) {
            continue;
        }
        let mut exp = 0usize;
        let mut denom = p - 1;
        loop {
            let term = n / denom;
            if term == 0 {
                break;
            }
            exp += term;
            match denom.checked_mul(p) {
                Some(d) => denom = d,
                None => break,
            }
        }
        result *= BigInt::from(p).pow(exp as u32);
    }
    result
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Type of a subgroup H <= (Z/p^d)^m given by generator vectors: the unique
/// exponents d_1 >= ... >= d_m with H carried to prod p^(d - d_j) Z/p^d by
/// some automorphism of the ambient group. Computed from the Smith normal
/// form of the lifted generator matrix augmented by p^d times the identity.
pub fn subgroup_type_p(p: u64, d: u32, m: usize, generators: &[Vec<BigInt>]) -> Result<Vec<u32>> {
    if !is_prime(p) {
        return Err(Error::Invalid(format!("{p} is not prime")));
    }
    if d == 0 {
        return Err(Error::Invalid("exponent d must be at least 1".into()));
    }
    let pd = BigInt::from(p).pow(d);
    for (i, g) in generators.iter().enumerate() {
        if g.len() != m {
            return Err(Error::Shape(format!("generator {i} has length {}, expected {m}", g.len())));
        }
        if g.iter().any(|x| x.is_negative() || x >= &pd) {
            return Err(Error::Invalid(format!("generator {i} is not reduced mod p^d")));
        }
    }
    let gmat = IntMatrix::from_columns(m, generators);
    let lifted = gmat.hstack(&IntMatrix::identity(m).scale(&pd));
    let factors = lifted.invariant_factors();
    debug_assert_eq!(factors.len(), m);
    let mut type_exponents: Vec<u32> = factors
        .iter()
        .map(|f| {
            let mut e = 0u32;
            let mut x = f.clone();
            let pb = BigInt::from(p);
            while (&x % &pb).is_zero() {
                x /= &pb;
                e += 1;
            }
            debug_assert!(x.is_one(), "invariant factor is not a power of p");
            d - e.min(d)
        })
        .collect();
    type_exponents.sort_unstable_by(|a, b| b.cmp(a));
    Ok(type_exponents)
}
