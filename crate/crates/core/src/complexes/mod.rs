//! Cochain complexes of finitely generated abelian groups, torsion bounds
//! under rationally vanishing differentials, and the spectral sequence of a
//! bounded filtered complex over Z and Q with degeneracy detection.

mod complex;
mod degeneracy;
mod filtered;
pub mod models;
mod spectral;

pub use complex::{CochainComplex, ComplexMap, LatticeInclusion, TorsionReport};
pub use degeneracy::{
    degeneracy_bound, image_divisibility, page_inclusion, verify_divisor_certificate,
    CertificateEntry, DegeneracyBound, DegeneracyCertificate, PageInclusion,
};
pub use filtered::{subgroup_from_rows, FilteredComplex, FilteredMap};
pub use spectral::{
    degenerates_at_e2_q, spectral_pages, spectral_pages_q, verify_convergence,
    verify_page_consistency, verify_tensoring_q, ConvergenceReport, PageEntry, QPageEntry,
    QSpectralPage, SpectralPage, TensoringReport,
};
