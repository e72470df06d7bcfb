//! Small cohomology rings used as fixtures and oracles: tori, complex
//! projective spaces, and products of spheres.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::combinations;
use super::ring::GradedRing;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Sign of merging two disjoint sorted index sets: (-1)^{#inversions}.
fn merge_sign(a: &[usize], b: &[usize]) -> i64 {
    let mut inversions = 0;
    for &x in a {
        inversions += b.iter().filter(|&&y| y < x).count();
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Exterior algebra on k degree-1 generators: the cohomology ring of the
/// k-torus. Degree-d basis: size-d index sets in lexicographic order.
pub fn torus(k: usize) -> GradedRing {
    let dims: Vec<usize> = (0..=k).map(|d| combinations(k, d).len()).collect();
    let names: Vec<Vec<String>> = (0..=k)
        .map(|d| {
            combinations(k, d)
                .iter()
                .map(|s| {
                    if s.is_empty() {
                        "1".to_string()
                    } else {
                        s.iter().map(|i| format!("x{}", i + 1)).collect::<Vec<_>>().join("")
                    }
                })
                .collect()
        })
        .collect();
    let ring = GradedRing::build(&dims, |d1, i, d2, j| {
        let s = &combinations(k, d1)[i];
        let t = &combinations(k, d2)[j];
        let mut out = vec![BigRational::zero(); dims[d1 + d2]];
        if s.iter().any(|x| t.contains(x)) {
            return out;
        }
        let mut merged: Vec<usize> = s.iter().chain(t.iter()).copied().collect();
        let sign = merge_sign(s, t);
        merged.sort_unstable();
        let pos = combinations(k, d1 + d2).iter().position(|c| *c == merged).unwrap();
        out[pos] = q(sign);
        out
    })
    .expect("torus ring is well formed");
    ring.with_names(names).expect("name table matches")
}

/// Truncated polynomial ring Q[w]/(w^{m+1}) with |w| = 2: the cohomology
/// ring of complex projective m-space. Top degree 2m.
pub fn cp(m: usize) -> GradedRing {
    let n = 2 * m;
    let dims: Vec<usize> = (0..=n).map(|d| usize::from(d % 2 == 0)).collect();
    let names = (0..=n)
        .map(|d| {
            if d % 2 != 0 {
                vec![]
            } else if d == 0 {
                vec!["1".to_string()]
            } else if d == 2 {
                vec!["w".to_string()]
            } else {
                vec![format!("w{}", d / 2)]
            }
        })
        .collect();
    let ring = GradedRing::build(&dims, |d1, _, d2, _| {
        if dims[d1] == 0 || dims[d2] == 0 {
            vec![BigRational::zero(); dims[d1 + d2]]
        } else {
            vec![BigRational::one()]
        }
    })
    .expect("projective space ring is well formed");
    ring.with_names(names).expect("name table matches")
}

/// Exterior generator x in degree 1 times a 3-sphere class y: the
/// cohomology ring of S^1 x S^3, top degree 4.
pub fn s1_s3() -> GradedRing {
    let dims = [1usize, 1, 0, 1, 1];
    let names = vec![
        vec!["1".to_string()],
        vec!["x".to_string()],
        vec![],
        vec!["y".to_string()],
        vec!["xy".to_string()],
    ];
    let ring = GradedRing::build(&dims, |d1, _, d2, _| match (d1, d2) {
        (0, d) | (d, 0) => vec![BigRational::one(); dims[d].min(1)],
        (1, 1) => vec![],
        (1, 3) => vec![BigRational::one()],
        (3, 1) => vec![-BigRational::one()],
        _ => vec![BigRational::zero(); dims[d1 + d2]],
    })
    .expect("sphere product ring is well formed");
    ring.with_names(names).expect("name table matches")
}

/// The one-point ring: Q in degree 0 only.
pub fn point_ring() -> GradedRing {
    GradedRing::build(&[1], |_, _, _, _| vec![BigRational::one()]).expect("point ring")
}

/// Two-torus with the degree-2 basis rescaled so that x1 x2 = 2 g: the
/// integral structure constants pick up a factor of 2, making the top cup
/// map have cokernel of order 2.
pub fn t2_rescaled() -> GradedRing {
    let dims = [1usize, 2, 1];
    let names = vec![
        vec!["1".to_string()],
        vec!["x1".to_string(), "x2".to_string()],
        vec!["g".to_string()],
    ];
    let ring = GradedRing::build(&dims, |d1, i, d2, j| match (d1, d2) {
        (0, d) | (d, 0) => {
            let mut v = vec![BigRational::zero(); dims[d]];
            v[if d1 == 0 { j } else { i }] = BigRational::one();
            v
        }
        (1, 1) => {
            if i == j {
                vec![BigRational::zero()]
            } else if i < j {
                vec![q(2)]
            } else {
                vec![q(-2)]
            }
        }
        _ => vec![],
    })
    .expect("rescaled torus ring is well formed");
    ring.with_names(names).expect("name table matches")
}
