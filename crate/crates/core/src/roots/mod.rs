//! Decision procedures for integer matrices: exact characteristic
//! polynomials, quasi-unipotence via cyclotomic factor stripping, minimal
//! finite orders, bounded root search, the binomial identities relating a
//! unipotent root to its power, and finite-order detection for automorphisms
//! of finitely generated abelian groups.

mod order;
mod polynomial;
mod search;

pub use order::{
    automorphism_order, finite_order, is_quasi_unipotent, InfiniteWitness, OrderResult,
    QuasiUnipotence,
};
pub use polynomial::{char_poly, cyclotomic, cyclotomic_orders, IntPoly};
pub use search::{find_root_bruteforce, verify_root_binomial, RootBinomialReport};
