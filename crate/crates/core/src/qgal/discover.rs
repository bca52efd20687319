use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use super::standard::{quasi_galois_order, verify_certificate, QGCertificate};
use crate::error::{Error, Result};
use crate::plane::ProjPoint;
use crate::polyring::TriForm;

pub const DEFAULT_DISCOVERY_CAP: usize = 512;

/// Quasi-Galois points reachable from the seeds by the known generators.
///
/// Every seed is decided; points of order ≥ 2 contribute their generator,
/// whose powers are applied to all known quasi-Galois points until nothing
/// new appears. The result is a verified lower bound for the full set.
pub fn discover(c: &TriForm, seeds: &[ProjPoint], cap: usize) -> Result<Vec<QGCertificate>> {
    let mut decided: BTreeMap<ProjPoint, QGCertificate> = BTreeMap::new();
    let mut pending: BTreeSet<ProjPoint> = seeds.iter().cloned().collect();
    while !pending.is_empty() {
        let batch: Vec<ProjPoint> = std::mem::take(&mut pending).into_iter().collect();
        let results: Vec<Result<QGCertificate>> = batch.par_iter().map(|p| quasi_galois_order(c, p)).collect();
        for res in results {
            let cert = res?;
            decided.insert(cert.point.clone(), cert);
        }
        let found: Vec<&QGCertificate> = decided.values().filter(|c| c.order >= 2).collect();
        if found.len() > cap {
            return Err(Error::DiscoveryCapExceeded {
                cap,
                partial: found.into_iter().cloned().collect(),
            });
        }
        for g_cert in &found {
            let g = g_cert.generator.as_ref().expect("order >= 2");
            for q_cert in &found {
                let mut q = q_cert.point.clone();
                for _ in 1..g_cert.order {
                    q = g.apply(&q);
                    if !decided.contains_key(&q) {
                        pending.insert(q.clone());
                    }
                }
            }
        }
    }
    let out: Vec<QGCertificate> = decided.into_values().filter(|c| c.order >= 2).collect();
    debug_assert!(out.iter().all(|cert| verify_certificate(c, cert)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::FieldContext;

    #[test]
    fn fermat_sextic_closure() {
        let ctx = FieldContext::cyclotomic(6).unwrap();
        let f = TriForm::from_int_terms(&ctx, &[([6, 0, 0], 1), ([0, 6, 0], 1), ([0, 0, 6], 1)]);
        let mut seeds: Vec<ProjPoint> = (0..3).map(|i| ProjPoint::vertex(&ctx, i)).collect();
        seeds.push(ProjPoint::from_ints(&ctx, [1, 0, 1]).unwrap());
        // every generator here fixes Y, so the orbit stays on the line Y = 0
        let certs = discover(&f, &seeds, DEFAULT_DISCOVERY_CAP).unwrap();
        assert_eq!(certs.len(), 9);
        seeds.push(ProjPoint::from_ints(&ctx, [0, 1, 1]).unwrap());
        let certs = discover(&f, &seeds, DEFAULT_DISCOVERY_CAP).unwrap();
        assert_eq!(certs.len(), 21);
        assert_eq!(certs.iter().filter(|c| c.order == 6).count(), 3);
        assert_eq!(certs.iter().filter(|c| c.order == 2).count(), 18);
        assert!(certs.windows(2).all(|w| w[0] < w[1]));
        assert!(matches!(
            discover(&f, &seeds, 5),
            Err(Error::DiscoveryCapExceeded { cap: 5, .. })
        ));
    }
}
