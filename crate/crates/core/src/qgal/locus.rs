use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::standard::{verify_certificate, QGCertificate};
use crate::error::{Error, Result};
use crate::groupkit::{homology_decomposition, Decomposition};
use crate::plane::{curve_line_points, meet, on_curve, ProjLine, ProjPoint, ProjTransform};
use crate::polyring::TriForm;

/// Center and axis of a homology.
pub fn fixed_locus(sigma: &ProjTransform) -> Result<(ProjPoint, ProjLine)> {
    match homology_decomposition(sigma)? {
        Decomposition::Homology { center, axis, .. } => Ok((center, axis)),
        other => Err(Error::NotHomology(format!("{sigma} decomposes as {other:?}"))),
    }
}

fn parts(c: &QGCertificate) -> Result<(&ProjTransform, &ProjLine)> {
    match (&c.generator, &c.axis) {
        (Some(g), Some(a)) if c.order >= 2 => Ok((g, a)),
        _ => Err(Error::NotQuasiGalois(c.point.to_string())),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GPairWitness {
    pub first: String,
    pub second: String,
    /// σ₁(P₂) = P₂
    pub first_fixes_second: bool,
    /// σ₂(P₁) = P₁
    pub second_fixes_first: bool,
}

impl GPairWitness {
    pub fn is_gpair(&self) -> bool {
        self.first_fixes_second && self.second_fixes_first
    }
}

pub fn is_gpair(c1: &QGCertificate, c2: &QGCertificate) -> Result<GPairWitness> {
    let (g1, _) = parts(c1)?;
    let (g2, _) = parts(c2)?;
    Ok(GPairWitness {
        first: c1.point.to_string(),
        second: c2.point.to_string(),
        first_fixes_second: g1.apply(&c2.point) == c2.point,
        second_fixes_first: g2.apply(&c1.point) == c1.point,
    })
}

/// Transports a certificate along an automorphism τ of C.
pub fn conjugate_certificate(c: &QGCertificate, tau: &ProjTransform, curve: &TriForm) -> Result<QGCertificate> {
    if !tau.preserves(curve) {
        return Err(Error::NotAutomorphism);
    }
    let out = QGCertificate {
        point: tau.apply(&c.point),
        on_curve: c.on_curve,
        projection_degree: c.projection_degree,
        order: c.order,
        generator: c.generator.as_ref().map(|g| g.conjugate_by(tau)),
        axis: c.axis.as_ref().map(|l| tau.apply_line(l)),
    };
    debug_assert!(verify_certificate(curve, &out));
    Ok(out)
}

/// The certificate read in the dual plane: the axis becomes the point, the
/// point becomes the axis, and the generator acts by its inverse transpose.
/// `on_curve` and `projection_degree` are carried over unchanged.
pub fn dual_certificate(c: &QGCertificate) -> Result<QGCertificate> {
    let (g, axis) = parts(c)?;
    Ok(QGCertificate {
        point: axis.as_point(),
        on_curve: c.on_curve,
        projection_degree: c.projection_degree,
        order: c.order,
        generator: Some(g.inverse_transpose()),
        axis: Some(ProjLine::from_point(&c.point)),
    })
}

/// Points of C in F[P₁] ∩ F[P₂], where F[P] is the center together with the axis.
pub fn fixed_locus_intersection(c1: &QGCertificate, c2: &QGCertificate, curve: &TriForm) -> Result<Vec<ProjPoint>> {
    let (_, a1) = parts(c1)?;
    let (_, a2) = parts(c2)?;
    let (p1, p2) = (&c1.point, &c2.point);
    if p1 == p2 {
        return Err(Error::EqualPoints);
    }
    let mut out = BTreeSet::new();
    if a1 == a2 {
        out.extend(curve_line_points(curve, a1)?.points);
    } else {
        out.insert(meet(a1, a2)?);
    }
    if a2.contains(p1) {
        out.insert(p1.clone());
    }
    if a1.contains(p2) {
        out.insert(p2.clone());
    }
    Ok(out.into_iter().filter(|q| on_curve(curve, q)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::FieldContext;
    use crate::qgal::quasi_galois_order;

    #[test]
    fn fixed_locus_examples() {
        let ctx = FieldContext::cyclotomic(6).unwrap();
        let w = ctx.zeta(6).unwrap();
        let d = ProjTransform::diagonal([w, ctx.one(), ctx.one()]).unwrap();
        assert_eq!(
            fixed_locus(&d).unwrap(),
            (ProjPoint::vertex(&ctx, 0), ProjLine::parse(&ctx, "1:0:0").unwrap())
        );
        // the homology found for the Fermat sextic at (1:0:1)
        let f = TriForm::from_int_terms(&ctx, &[([6, 0, 0], 1), ([0, 6, 0], 1), ([0, 0, 6], 1)]);
        let c = quasi_galois_order(&f, &ProjPoint::from_ints(&ctx, [1, 0, 1]).unwrap()).unwrap();
        let (center, axis) = fixed_locus(c.generator.as_ref().unwrap()).unwrap();
        assert_eq!(center, c.point);
        assert_eq!(&axis, c.axis.as_ref().unwrap());
        // (X, Y, Z) ↦ (−Z, Y, −X) fixes the line X + Z = 0 pointwise
        assert_eq!(axis, ProjLine::parse(&ctx, "1:0:1").unwrap());
        assert!(matches!(fixed_locus(&ProjTransform::identity(&ctx)), Err(Error::NotHomology(_))));
    }

    #[test]
    fn dual_is_an_involution() {
        let ctx = FieldContext::cyclotomic(6).unwrap();
        let f = TriForm::from_int_terms(&ctx, &[([6, 0, 0], 1), ([0, 6, 0], 1), ([0, 0, 6], 1)]);
        for p in ["1:0:0", "1:0:1", "1:0:z"] {
            let c = quasi_galois_order(&f, &ProjPoint::parse(&ctx, p).unwrap()).unwrap();
            let d = dual_certificate(&c).unwrap();
            assert_eq!(d.order, c.order);
            let g = d.generator.as_ref().unwrap();
            assert_eq!(fixed_locus(g).unwrap(), (d.point.clone(), d.axis.clone().unwrap()));
            assert_eq!(dual_certificate(&d).unwrap(), c);
        }
        let c = quasi_galois_order(&f, &ProjPoint::vertex(&ctx, 0)).unwrap();
        let d = dual_certificate(&c).unwrap();
        let w = ctx.zeta(6).unwrap();
        assert_eq!(
            d.generator.unwrap(),
            ProjTransform::diagonal([w.inverse().unwrap(), ctx.one(), ctx.one()]).unwrap()
        );
    }

    #[test]
    fn mixed_example_loci_meet_at_both_points() {
        let ctx = FieldContext::cyclotomic(6).unwrap();
        let f = TriForm::from_int_terms(&ctx, &[([6, 0, 1], 1), ([3, 4, 0], 1), ([0, 6, 1], 1), ([0, 0, 7], 1)]);
        let c1 = quasi_galois_order(&f, &ProjPoint::vertex(&ctx, 0)).unwrap();
        let c2 = quasi_galois_order(&f, &ProjPoint::vertex(&ctx, 1)).unwrap();
        assert_eq!(
            fixed_locus_intersection(&c1, &c2, &f).unwrap(),
            vec![ProjPoint::vertex(&ctx, 1), ProjPoint::vertex(&ctx, 0)]
        );
        assert!(matches!(fixed_locus_intersection(&c1, &c1, &f), Err(Error::EqualPoints)));
        assert!(is_gpair(&c1, &c2).unwrap().is_gpair());
    }

    #[test]
    fn conjugation_moves_certificates() {
        let ctx = FieldContext::cyclotomic(6).unwrap();
        let f = TriForm::from_int_terms(&ctx, &[([6, 0, 0], 1), ([0, 6, 0], 1), ([0, 0, 6], 1)]);
        let c = quasi_galois_order(&f, &ProjPoint::from_ints(&ctx, [1, 0, 1]).unwrap()).unwrap();
        let id = ProjTransform::identity(&ctx);
        assert_eq!(conjugate_certificate(&c, &id, &f).unwrap(), c);
        let swap = ProjTransform::permutation(&ctx, [1, 0, 2]);
        let moved = conjugate_certificate(&c, &swap, &f).unwrap();
        assert_eq!(moved.point, ProjPoint::from_ints(&ctx, [0, 1, 1]).unwrap());
        assert_eq!(moved, quasi_galois_order(&f, &moved.point).unwrap());
        let shear = ProjTransform::from_ints(&ctx, [[1, 1, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        assert!(matches!(conjugate_certificate(&c, &shear, &f), Err(Error::NotAutomorphism)));
    }
}
