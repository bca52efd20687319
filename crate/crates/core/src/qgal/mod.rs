//! Deciding quasi-Galois points, with certificates, discovery and census.

mod census;
mod discover;
mod locus;
mod standard;

pub use census::{
    census, galois_closure_bounds, predicted_galois_group, BoundCheck, CensusReport, ClosureBounds,
    GroupPrediction,
};
pub use discover::{discover, DEFAULT_DISCOVERY_CAP};
pub use locus::{
    conjugate_certificate, dual_certificate, fixed_locus, fixed_locus_intersection, is_gpair, GPairWitness,
};
pub use standard::{
    normalize_center, quasi_galois_order, rational_order, solve_homology, standard_coordinates,
    verify_certificate, CertificateRecord, QGCertificate,
};
