use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::abelian::{ExponentValue, Morphism, Presentation, Subgroup};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

use super::complex::CochainComplex;
use super::filtered::{FilteredComplex, FilteredMap};
use super::spectral::{spectral_pages, SpectralPage};

/// The injection (E_k^{p,q})_Z -> (E_2^{p,q})_Z obtained by stacking the
/// per-page lattice inclusions, with its exponent and the product bounds.
#[derive(Clone, Debug)]
pub struct PageInclusion {
    pub p: i64,
    pub q: i64,
    /// Between free presentations of ranks rank E_k and rank E_2.
    pub map: Morphism,
    pub exponent: ExponentValue,
    /// prod over r = 2..k of exp Tor E_r^{p+r, q-r+1}.
    pub bound: BigInt,
    /// Same product taken over E_2 torsion (each page factor is bounded by
    /// the E_2 factor at the same spot, since torsion cannot increase).
    pub bound_e2: BigInt,
    pub holds: bool,
}

fn page_of<'a>(pages: &'a [SpectralPage], r: usize) -> &'a SpectralPage {
    &pages[r - 2]
}

/// Stacked inclusions (E_k)_Z -> (E_2)_Z at every (p,q), for 2 <= k <= L+2.
/// Rejected when some d_r with 2 <= r < k is not rationally zero.
pub fn page_inclusion(fc: &FilteredComplex, k: usize) -> Result<Vec<PageInclusion>> {
    let pages = spectral_pages(fc)?;
    if k < 2 || k > pages.last().expect("nonempty").r {
        return Err(Error::Invalid(format!("page index {k} out of range")));
    }
    for page in &pages[..k - 2] {
        for (&(p, q), e) in &page.entries {
            if !e.d.lattice_part().matrix().is_zero() {
                return Err(Error::Precondition(format!(
                    "d_{} at ({p},{q}) is not rationally zero",
                    page.r
                )));
            }
        }
    }
    let e2 = page_of(&pages, 2);
    let mut out = Vec::new();
    for &(p, q) in page_of(&pages, k).entries.keys() {
        let ek_rank = page_of(&pages, k).entry(p, q).expect("key").group.rank();
        let mut psi = Morphism::identity(&Presentation::free(ek_rank));
        let mut bound = BigInt::one();
        let mut bound_e2 = BigInt::one();
        // walk from page k down to page 2
        for r in (2..k).rev() {
            let page = page_of(&pages, r);
            let next = page_of(&pages, r + 1);
            let b = page.entry(p, q).expect("grid");
            let ri = r as i64;
            // three-term complex E_r^{p-r,q+r-1} -> E_r^{p,q} -> E_r^{p+r,q-r+1}
            let d_in = match page.entry(p - ri, q + ri - 1) {
                Some(a) => a.d.clone(),
                None => Morphism::zero(&Presentation::trivial(), &b.group),
            };
            let d_out = b.d.clone();
            let a_group = d_in.source().clone();
            let c_group = d_out.target().clone();
            let three = CochainComplex::new(
                0,
                vec![a_group, b.group.clone(), c_group],
                vec![d_in, d_out.clone()],
            )?;
            let (h, hmap) = three.cohomology(1)?;
            // iso from the directly computed next page onto ker/im
            let ne = next.entry(p, q).expect("grid");
            let mut cols = Vec::new();
            for g in ne.map.numerator().generators() {
                let class = b.map.project(g).ok_or_else(|| {
                    Error::Validation("page-(r+1) cycle is not a page-r cycle".into())
                })?;
                let coords = hmap.project(&class).ok_or_else(|| {
                    Error::Validation("page-(r+1) class is not d_r-closed".into())
                })?;
                cols.push(coords);
            }
            let phi = Morphism::new(
                ne.group.clone(),
                h.clone(),
                IntMatrix::from_columns(h.generators(), &cols),
            )?;
            if !phi.is_surjective() || ne.group.canonical_form() != h.canonical_form() {
                return Err(Error::Validation(format!(
                    "page recomputation mismatch at page {r}, ({p},{q})"
                )));
            }
            let iota = three.lattice_inclusion(1)?;
            psi = iota.map.compose(&phi.lattice_part())?.compose(&psi)?;
            // exponent ledger: this step is bounded by exp Tor E_r at the
            // differential target
            let tor_r = match page.entry(p + ri, q - ri + 1) {
                Some(t) => t.group.torsion_exponent(),
                None => BigInt::one(),
            };
            let tor_2 = match e2.entry(p + ri, q - ri + 1) {
                Some(t) => t.group.torsion_exponent(),
                None => BigInt::one(),
            };
            bound *= tor_r;
            bound_e2 *= tor_2;
        }
        if Subgroup::kernel_of(&psi).canonical_form() != (0, vec![]) {
            return Err(Error::Validation(format!(
                "stacked inclusion at ({p},{q}) is not injective"
            )));
        }
        let exponent = psi.exponent();
        let holds = match exponent.finite() {
            Some(e) => e <= &bound && bound <= bound_e2,
            None => false,
        };
        out.push(PageInclusion { p, q, map: psi, exponent, bound, bound_e2, holds });
    }
    Ok(out)
}

/// For a map of filtered complexes: does the induced map on the free part of
/// E_2^{p,q} have image exactly n^p * (E_2^{p,q})_Z of the target, for all q?
pub fn image_divisibility(f: &FilteredMap, n: &BigInt, p: i64) -> Result<bool> {
    if p < 0 {
        return Err(Error::Invalid("column index must be nonnegative".into()));
    }
    if !n.is_positive() {
        return Err(Error::Invalid("scale must be positive".into()));
    }
    let src_e2 = spectral_pages(f.source())?.into_iter().next().expect("page 2");
    let tgt_e2 = spectral_pages(f.target())?.into_iter().next().expect("page 2");
    let np = n.pow(p as u32);
    for (&(ep, q), se) in &src_e2.entries {
        if ep != p {
            continue;
        }
        let te = tgt_e2.entry(p, q).expect("same grid");
        let s = p + q;
        let fmap = f
            .degree_map(s)
            .ok_or_else(|| Error::Invalid(format!("degree {s} out of range")))?;
        let mut cols = Vec::new();
        for g in se.map.numerator().generators() {
            let coords = te.map.project(&fmap.apply(g)).ok_or_else(|| {
                Error::Validation("map does not carry cycles to cycles".into())
            })?;
            cols.push(coords);
        }
        let induced = Morphism::new(
            se.group.clone(),
            te.group.clone(),
            IntMatrix::from_columns(te.group.generators(), &cols),
        )?;
        let lat = induced.lattice_part();
        let expected = Subgroup::multiple_of_full(lat.target(), &np);
        if !lat.image().equals(&expected)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The three successive scales of the degeneracy argument, plus the lower
/// bound that forces them to infinity with n.
#[derive(Clone, Debug)]
pub struct DegeneracyBound {
    pub lambda: BigInt,
    pub mu: BigInt,
    pub capital_lambda: BigInt,
    /// Lambda * exp_w * exp_iota_high * exp_iota_3 >= n^k always holds.
    pub lower_bound_ok: bool,
}

/// lambda = n^{p+k} / gcd(n^{p+k}, exp_iota_high);
/// mu = lambda / gcd(lambda, exp_iota_3 * n^p);
/// Lambda = mu / gcd(mu, exp_w).
pub fn degeneracy_bound(
    n: &BigInt,
    p: u32,
    _q: u32,
    k: u32,
    exp_iota_high: &BigInt,
    exp_iota_3: &BigInt,
    exp_w: &BigInt,
) -> Result<DegeneracyBound> {
    if !n.is_positive() || !exp_iota_high.is_positive() || !exp_iota_3.is_positive()
        || !exp_w.is_positive()
    {
        return Err(Error::Invalid("all scale inputs must be positive".into()));
    }
    if k < 2 {
        return Err(Error::Invalid("page index k must be at least 2".into()));
    }
    let npk = n.pow(p + k);
    let lambda = &npk / npk.gcd(exp_iota_high);
    let step = exp_iota_3 * n.pow(p);
    let mu = &lambda / lambda.gcd(&step);
    let capital_lambda = &mu / mu.gcd(exp_w);
    let nk = n.pow(k);
    let lower_bound_ok = &capital_lambda * exp_w * exp_iota_high * exp_iota_3 >= nk;
    Ok(DegeneracyBound { lambda, mu, capital_lambda, lower_bound_ok })
}

/// A claimed degeneracy witness at page k: for each (p,q), a list of scales
/// Lambda_i with d_k((E_k^{p,q})_Z) contained in Lambda_i * (E_k target)_Z.
/// Each containment is verified by membership.
#[derive(Clone, Debug)]
pub struct DegeneracyCertificate {
    pub page: usize,
    pub entries: Vec<CertificateEntry>,
    pub constants: Vec<(String, BigInt)>,
}

#[derive(Clone, Debug)]
pub struct CertificateEntry {
    pub p: i64,
    pub q: i64,
    pub divisors: Vec<BigInt>,
    pub verified: bool,
}

impl DegeneracyCertificate {
    pub fn all_verified(&self) -> bool {
        self.entries.iter().all(|e| e.verified)
    }
}

/// Check a divisor sequence against the actual page-k differentials.
pub fn verify_divisor_certificate(
    fc: &FilteredComplex,
    k: usize,
    divisors: &[BigInt],
    constants: Vec<(String, BigInt)>,
) -> Result<DegeneracyCertificate> {
    if divisors.iter().any(|d| !d.is_positive()) {
        return Err(Error::Invalid("divisors must be positive".into()));
    }
    let pages = spectral_pages(fc)?;
    if k < 2 || k > pages.last().expect("nonempty").r {
        return Err(Error::Invalid(format!("page index {k} out of range")));
    }
    let page = page_of(&pages, k);
    let mut entries = Vec::new();
    for (&(p, q), e) in &page.entries {
        let lat = e.d.lattice_part();
        let image = lat.image();
        let verified = divisors.iter().try_fold(true, |acc, lam| -> Result<bool> {
            let scaled = Subgroup::multiple_of_full(lat.target(), lam);
            Ok(acc && image.is_subset_of(&scaled)?)
        })?;
        entries.push(CertificateEntry { p, q, divisors: divisors.to_vec(), verified });
    }
    Ok(DegeneracyCertificate { page: k, entries, constants })
}
