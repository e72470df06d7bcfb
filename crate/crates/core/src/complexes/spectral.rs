use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::abelian::{subquotient, Morphism, Presentation, Subgroup, SubquotientMap};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::rational::{span_dim, QMatrix};

use super::filtered::FilteredComplex;

/// One cell of a spectral sequence page over Z: the group E_r^{p,q} together
/// with its presentation as a subquotient of C^{p+q} and the differential
/// d_r^{p,q}: E_r^{p,q} -> E_r^{p+r,q-r+1}.
#[derive(Clone, Debug)]
pub struct PageEntry {
    pub p: i64,
    pub q: i64,
    pub group: Presentation,
    /// Projection from the cycle subgroup Z_r^{p,q} of C^{p+q}.
    pub map: SubquotientMap,
    pub d: Morphism,
}

#[derive(Clone, Debug)]
pub struct SpectralPage {
    pub r: usize,
    pub entries: BTreeMap<(i64, i64), PageEntry>,
}

impl SpectralPage {
    pub fn entry(&self, p: i64, q: i64) -> Option<&PageEntry> {
        self.entries.get(&(p, q))
    }
}

/// One cell of a rational page: dimension of E_r^{p,q} over Q and the rank
/// of the outgoing differential.
#[derive(Clone, Copy, Debug)]
pub struct QPageEntry {
    pub p: i64,
    pub q: i64,
    pub dim: usize,
    pub d_rank: usize,
}

#[derive(Clone, Debug)]
pub struct QSpectralPage {
    pub r: usize,
    pub entries: BTreeMap<(i64, i64), QPageEntry>,
}

impl QSpectralPage {
    pub fn entry(&self, p: i64, q: i64) -> Option<&QPageEntry> {
        self.entries.get(&(p, q))
    }
}

/// Z_r^{p,q} = F^p C^{p+q} ∩ d^{-1}(F^{p+r} C^{p+q+1}), as a subgroup of
/// C^{p+q}. Out-of-range total degrees yield the trivial subgroup of the
/// trivial group.
fn cycle_subgroup(fc: &FilteredComplex, r: i64, p: i64, q: i64) -> Result<Subgroup> {
    let s = p + q;
    let c = fc.complex();
    if c.group(s).is_none() {
        return Ok(Subgroup::trivial(&Presentation::trivial()));
    }
    let fp = fc.filtration_subgroup(s, p);
    match c.differential(s) {
        Some(d) => {
            let target = fc.filtration_subgroup(s + 1, p + r);
            let pre = target.preimage_under(d)?;
            fp.intersection(&pre)
        }
        None => Ok(fp),
    }
}

/// Boundary part Z_{r-1}^{p+1,q-1} + d(Z_{r-1}^{p-r+1,q+r-2}) of E_r^{p,q}.
fn boundary_subgroup(fc: &FilteredComplex, r: i64, p: i64, q: i64) -> Result<Subgroup> {
    let s = p + q;
    let c = fc.complex();
    let stay = cycle_subgroup(fc, r - 1, p + 1, q - 1)?;
    let hit = match c.differential(s - 1) {
        Some(d) => cycle_subgroup(fc, r - 1, p - r + 1, q + r - 2)?.image_under(d)?,
        None => Subgroup::trivial(&c.group_or_trivial(s)),
    };
    stay.sum(&hit)
}

/// All pages E_r for r = 2, ..., L + 2 over Z, where L is the filtration
/// length. The last page is E_infinity: every later differential starts or
/// ends outside the filtration range.
pub fn spectral_pages(fc: &FilteredComplex) -> Result<Vec<SpectralPage>> {
    let l = fc.length() as i64;
    let c = fc.complex();
    let mut pages = Vec::new();
    for r in 2..=(l + 2) {
        let mut cells: BTreeMap<(i64, i64), (Presentation, SubquotientMap)> = BTreeMap::new();
        for p in 0..=l {
            for s in c.k_min()..=c.k_max() {
                let q = s - p;
                let z = cycle_subgroup(fc, r, p, q)?;
                let b = boundary_subgroup(fc, r, p, q)?;
                cells.insert((p, q), subquotient(&z, &b)?);
            }
        }
        let mut entries = BTreeMap::new();
        for (&(p, q), (group, map)) in &cells {
            let (tp, tq) = (p + r, q - r + 1);
            let d = match cells.get(&(tp, tq)) {
                Some((tgroup, tmap)) => {
                    let s = p + q;
                    let mut cols = Vec::new();
                    for g in map.numerator().generators() {
                        let dg = match c.differential(s) {
                            Some(d) => d.apply(g),
                            None => vec![BigInt::from(0); c.group_or_trivial(s + 1).generators()],
                        };
                        let coords = tmap.project(&dg).ok_or_else(|| {
                            Error::Validation(format!(
                                "differential image leaves the cycle subgroup at page {r}, ({p},{q})"
                            ))
                        })?;
                        cols.push(coords);
                    }
                    let matrix = IntMatrix::from_columns(tgroup.generators(), &cols);
                    Morphism::new(group.clone(), tgroup.clone(), matrix)?
                }
                None => Morphism::zero(group, &Presentation::trivial()),
            };
            entries.insert(
                (p, q),
                PageEntry { p, q, group: group.clone(), map: map.clone(), d },
            );
        }
        pages.push(SpectralPage { r: r as usize, entries });
    }
    Ok(pages)
}

// ---- rational mode -------------------------------------------------------
//
// Computed with independent linear algebra over Q, not by tensoring the Z
// answer. A subspace of C^s_Q = Q^n / span(relations) is represented by
// ambient vectors whose span contains the relation span.

fn to_q(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

fn relation_span(p: &Presentation) -> Vec<Vec<BigRational>> {
    (0..p.relations().cols()).map(|j| to_q(&p.relations().column(j))).collect()
}

fn subgroup_span(s: &Subgroup) -> Vec<Vec<BigRational>> {
    let mut out: Vec<Vec<BigRational>> = s.generators().iter().map(|g| to_q(g)).collect();
    out.extend(relation_span(s.ambient()));
    out
}

fn identity_span(n: usize) -> Vec<Vec<BigRational>> {
    let id = QMatrix::identity(n);
    (0..n).map(|j| id.column(j)).collect()
}

fn negated(m: &QMatrix) -> QMatrix {
    let mut out = QMatrix::zero(m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.set(i, j, -m.get(i, j).clone());
        }
    }
    out
}

fn q_matrix_of(m: &IntMatrix) -> QMatrix {
    QMatrix::from_int_columns(m.rows(), &m.columns())
}

/// {x : d x ∈ span(target)} as a spanning set.
fn q_preimage(d: &QMatrix, target: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let t = QMatrix::from_columns(d.rows(), target);
    let stacked = d.hstack(&negated(&t));
    stacked
        .nullspace()
        .into_iter()
        .map(|z| z[..d.cols()].to_vec())
        .collect()
}

fn q_intersect(n: usize, a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let am = QMatrix::from_columns(n, a);
    let bm = QMatrix::from_columns(n, b);
    let stacked = am.hstack(&negated(&bm));
    stacked
        .nullspace()
        .into_iter()
        .map(|z| am.mul_vec(&z[..a.len()]))
        .collect()
}

fn q_image(d: &QMatrix, span: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    span.iter().map(|v| d.mul_vec(v)).collect()
}

struct QModel {
    /// Per degree index: number of ambient generators.
    dims: Vec<usize>,
    k_min: i64,
    /// Relation spans per degree.
    rels: Vec<Vec<Vec<BigRational>>>,
    /// Differential matrices per degree (d^k for k < k_max).
    ds: Vec<QMatrix>,
}

impl QModel {
    fn new(fc: &FilteredComplex) -> Self {
        let c = fc.complex();
        let mut dims = Vec::new();
        let mut rels = Vec::new();
        let mut ds = Vec::new();
        for k in c.k_min()..=c.k_max() {
            let g = c.group(k).expect("degree in range");
            dims.push(g.generators());
            rels.push(relation_span(g));
            if let Some(d) = c.differential(k) {
                ds.push(q_matrix_of(d.matrix()));
            }
        }
        QModel { dims, k_min: c.k_min(), rels, ds }
    }

    fn idx(&self, k: i64) -> Option<usize> {
        if k < self.k_min || k >= self.k_min + self.dims.len() as i64 {
            None
        } else {
            Some((k - self.k_min) as usize)
        }
    }

    fn d(&self, k: i64) -> Option<&QMatrix> {
        let i = self.idx(k)?;
        self.ds.get(i)
    }

    /// Span of F^p C^k_Q (relations included); empty for out-of-range degrees.
    fn filtration_span(&self, fc: &FilteredComplex, k: i64, p: i64) -> Vec<Vec<BigRational>> {
        match self.idx(k) {
            Some(i) => {
                if p <= 0 {
                    identity_span(self.dims[i])
                } else {
                    subgroup_span(&fc.filtration_subgroup(k, p))
                }
            }
            None => vec![],
        }
    }

    fn cycle_span(&self, fc: &FilteredComplex, r: i64, p: i64, q: i64) -> Vec<Vec<BigRational>> {
        let s = p + q;
        let i = match self.idx(s) {
            Some(i) => i,
            None => return vec![],
        };
        let fp = self.filtration_span(fc, s, p);
        match self.d(s) {
            Some(d) => {
                let target = self.filtration_span(fc, s + 1, p + r);
                q_intersect(self.dims[i], &fp, &q_preimage(d, &target))
            }
            None => fp,
        }
    }

    fn boundary_span(&self, fc: &FilteredComplex, r: i64, p: i64, q: i64) -> Vec<Vec<BigRational>> {
        let s = p + q;
        let i = match self.idx(s) {
            Some(i) => i,
            None => return vec![],
        };
        let mut span = self.cycle_span(fc, r - 1, p + 1, q - 1);
        if let Some(d) = self.d(s - 1) {
            span.extend(q_image(d, &self.cycle_span(fc, r - 1, p - r + 1, q + r - 2)));
        }
        span.extend(self.rels[i].iter().cloned());
        span
    }
}

/// Rational pages E_r(Q) for r = 2, ..., L + 2, computed by independent
/// rational linear algebra.
pub fn spectral_pages_q(fc: &FilteredComplex) -> Result<Vec<QSpectralPage>> {
    let l = fc.length() as i64;
    let c = fc.complex();
    let model = QModel::new(fc);
    let mut pages = Vec::new();
    for r in 2..=(l + 2) {
        let mut entries = BTreeMap::new();
        for p in 0..=l {
            for s in c.k_min()..=c.k_max() {
                let q = s - p;
                let n = model.dims[model.idx(s).expect("degree in range")];
                let z = model.cycle_span(fc, r, p, q);
                let b = model.boundary_span(fc, r, p, q);
                let dim = span_dim(n, &z) - span_dim(n, &b);
                let d_rank = match (model.idx(s + 1), model.d(s)) {
                    (Some(ti), Some(d)) if p + r <= l => {
                        let tb = model.boundary_span(fc, r, p + r, q - r + 1);
                        let nt = model.dims[ti];
                        let mut img = q_image(d, &z);
                        img.extend(tb.iter().cloned());
                        span_dim(nt, &img) - span_dim(nt, &tb)
                    }
                    _ => 0,
                };
                entries.insert((p, q), QPageEntry { p, q, dim, d_rank });
            }
        }
        pages.push(QSpectralPage { r: r as usize, entries });
    }
    Ok(pages)
}

// ---- cross-checks --------------------------------------------------------

#[derive(Clone, Debug)]
pub struct TensoringReport {
    pub ok: bool,
    /// (r, p, q, rank over Z, dimension over Q) of the first discrepancy.
    pub first_discrepancy: Option<(usize, i64, i64, usize, usize)>,
}

/// Rank of every E_r^{p,q} over Z must equal the dimension of E_r^{p,q}
/// over Q; the two sides are computed by unrelated code paths.
pub fn verify_tensoring_q(fc: &FilteredComplex) -> Result<TensoringReport> {
    let zpages = spectral_pages(fc)?;
    let qpages = spectral_pages_q(fc)?;
    for (zp, qp) in zpages.iter().zip(&qpages) {
        for (key, ze) in &zp.entries {
            let qe = qp.entries.get(key).expect("same grid");
            if ze.group.rank() != qe.dim {
                return Ok(TensoringReport {
                    ok: false,
                    first_discrepancy: Some((zp.r, key.0, key.1, ze.group.rank(), qe.dim)),
                });
            }
        }
    }
    Ok(TensoringReport { ok: true, first_discrepancy: None })
}

/// True iff every differential d_r, r >= 2, vanishes rationally — i.e. the
/// image of every d_r over Z is torsion.
pub fn degenerates_at_e2_q(fc: &FilteredComplex) -> Result<bool> {
    let pages = spectral_pages(fc)?;
    Ok(all_differentials_q_zero(&pages))
}

pub(crate) fn all_differentials_q_zero(pages: &[SpectralPage]) -> bool {
    pages
        .iter()
        .all(|page| page.entries.values().all(|e| e.d.lattice_part().matrix().is_zero()))
}

/// d_r ∘ d_r = 0 on every page, and recomputing E_{r+1} as
/// ker d_r / im d_r reproduces the directly computed page.
pub fn verify_page_consistency(pages: &[SpectralPage]) -> Result<bool> {
    for w in pages.windows(2) {
        let (page, next) = (&w[0], &w[1]);
        let r = page.r as i64;
        for (&(p, q), e) in &page.entries {
            if let Some(te) = page.entries.get(&(p + r, q - r + 1)) {
                if !te.d.compose(&e.d)?.is_zero_map() {
                    return Ok(false);
                }
            }
            let ker = Subgroup::kernel_of(&e.d);
            let im = match page.entries.get(&(p - r, q + r - 1)) {
                Some(se) => se.d.image(),
                None => Subgroup::trivial(&e.group),
            };
            let recomputed = subquotient(&ker, &im)?.0;
            let direct = &next.entries.get(&(p, q)).expect("same grid").group;
            if recomputed.canonical_form() != direct.canonical_form() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug)]
pub struct ConvergenceReport {
    pub ok: bool,
    /// (p, q, E_infinity canonical form, graded-piece canonical form) of the
    /// first mismatch.
    pub first_mismatch: Option<(i64, i64, (usize, Vec<BigInt>), (usize, Vec<BigInt>))>,
}

/// E_infinity^{p,q} must be isomorphic to the p-th graded piece of
/// H^{p+q}(C) under the induced filtration F^p H = im(F^p ∩ ker d -> H).
pub fn verify_convergence(fc: &FilteredComplex) -> Result<ConvergenceReport> {
    let pages = spectral_pages(fc)?;
    let e_inf = pages.last().expect("at least one page");
    let c = fc.complex();
    for s in c.k_min()..=c.k_max() {
        let (h, hmap) = c.cohomology(s)?;
        let cocycles = c.cocycles(s);
        // induced filtration on H^s, p = 0..=L+1
        let mut filt_h = Vec::new();
        for p in 0..=(fc.length() as i64 + 1) {
            let zp = fc.filtration_subgroup(s, p).intersection(&cocycles)?;
            let gens = zp
                .generators()
                .iter()
                .map(|g| hmap.project(g).expect("cocycle projects"))
                .collect();
            filt_h.push(Subgroup::new(h.clone(), gens)?);
        }
        for p in 0..=(fc.length() as i64) {
            let graded = subquotient(&filt_h[p as usize], &filt_h[p as usize + 1])?.0;
            let q = s - p;
            let direct = &e_inf.entries.get(&(p, q)).expect("grid covers range").group;
            if graded.canonical_form() != direct.canonical_form() {
                return Ok(ConvergenceReport {
                    ok: false,
                    first_mismatch: Some((p, q, direct.canonical_form(), graded.canonical_form())),
                });
            }
        }
    }
    Ok(ConvergenceReport { ok: true, first_mismatch: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::Morphism;
    use crate::complexes::complex::CochainComplex;
    use crate::complexes::models::{hopf_model, two_circles_model};

    #[test]
    fn trivial_filtration_recovers_cohomology() {
        // 0 -> Z --(x6)--> Z -> 0 with the trivial filtration
        let zz = Presentation::free(1);
        let d = Morphism::scalar(&zz, &BigInt::from(6));
        let c = CochainComplex::new(0, vec![zz.clone(), zz], vec![d]).unwrap();
        let fc = FilteredComplex::trivial(c.clone());
        let pages = spectral_pages(&fc).unwrap();
        let e2 = &pages[0];
        assert_eq!(e2.entry(0, 0).unwrap().group.canonical_form(), (0, vec![]));
        assert_eq!(
            e2.entry(0, 1).unwrap().group.canonical_form(),
            (0, vec![BigInt::from(6)])
        );
        assert!(all_differentials_q_zero(&pages));
        assert!(verify_convergence(&fc).unwrap().ok);
    }

    #[test]
    fn hopf_model_has_d2_isomorphism() {
        let fc = hopf_model();
        let pages = spectral_pages(&fc).unwrap();
        let e2 = &pages[0];
        assert_eq!(e2.r, 2);
        assert_eq!(e2.entry(0, 1).unwrap().group.canonical_form(), (1, vec![]));
        assert_eq!(e2.entry(2, 0).unwrap().group.canonical_form(), (1, vec![]));
        let d2 = &e2.entry(0, 1).unwrap().d;
        assert!(d2.is_automorphism() || {
            // d2: E_2^{0,1} -> E_2^{2,0} between distinct but isomorphic groups
            d2.is_surjective() && Subgroup::kernel_of(d2).canonical_form() == (0, vec![])
        });
        // E_3 = E_infinity supported at (0,0) and (2,1)
        let e3 = &pages[1];
        for (&(p, q), e) in &e3.entries {
            let expected = usize::from((p, q) == (0, 0) || (p, q) == (2, 1));
            assert_eq!(e.group.rank(), expected, "at ({p},{q})");
            assert!(e.group.torsion().is_empty(), "at ({p},{q})");
        }
        assert!(!degenerates_at_e2_q(&fc).unwrap());
        assert!(verify_tensoring_q(&fc).unwrap().ok);
        assert!(verify_page_consistency(&pages).unwrap());
        assert!(verify_convergence(&fc).unwrap().ok);
    }

    #[test]
    fn two_circles_degenerate_with_betti_1_2_1() {
        let fc = two_circles_model();
        let pages = spectral_pages(&fc).unwrap();
        let e2 = &pages[0];
        // Betti profile by total degree: 1, 2, 1
        let mut betti = [0usize; 3];
        for (&(p, q), e) in &e2.entries {
            let s = p + q;
            if (0..3).contains(&s) {
                betti[s as usize] += e.group.rank();
            }
        }
        assert_eq!(betti, [1, 2, 1]);
        assert!(degenerates_at_e2_q(&fc).unwrap());
        assert!(verify_tensoring_q(&fc).unwrap().ok);
        assert!(verify_page_consistency(&pages).unwrap());
        assert!(verify_convergence(&fc).unwrap().ok);
    }
}
