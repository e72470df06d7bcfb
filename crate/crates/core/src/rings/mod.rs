//! Graded-commutative cohomology rings with exact rational structure
//! constants: validation, Poincare duality, cup maps against a degree-2
//! class, WLS-class detection and search, lattice defect invariants, and
//! tensor products with Koszul signs.

pub mod models;
mod product;
mod ring;
mod wls;

pub use product::{
    betti_report, product_ring, wls_sum_check, BettiReport, DegreeBound, ProductRing,
    SumCheckReport, SumSample,
};
pub use ring::{GradedRing, ValidationReport};
pub use wls::{
    c3, check_w1, check_w2, cup_map, delta_d, discsym_bound, find_wls_class, is_wls_class,
    stabilizer_check, tau, CupMap, FoundClass, TauReport, W1Witness, WlsVerdict,
};

/// All size-k subsets of 0..n in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return vec![];
    }
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        out.push(current.clone());
        // advance the rightmost index that can still move
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] < n - (k - i) {
                current[i] += 1;
                for j in i + 1..k {
                    current[j] = current[j - 1] + 1;
                }
                break;
            }
        }
    }
}
