#![allow(dead_code)]

//! Checks shared by the acceptance harness and the property tests. Each
//! returns `Err(reason)` on the first violation.

use std::collections::HashSet;
use std::sync::Arc;

use quasigalois::corpus::{self, NamedCurve};
use quasigalois::exactnum::{divisors, FieldContext};
use quasigalois::plane::{
    curve_line_points, intersection_multiplicity, tangent_line, ProjPoint, ProjTransform,
};
use quasigalois::polyring::TriForm;
use quasigalois::qgal::{
    census, discover, dual_certificate, normalize_center, quasi_galois_order, solve_homology,
    standard_coordinates, verify_certificate, QGCertificate, DEFAULT_DISCOVERY_CAP,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = Result<(), String>;

pub fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn curve(spec: &str) -> NamedCurve {
    corpus::from_spec(spec).unwrap_or_else(|e| panic!("{spec}: {e}"))
}

pub fn discovered(c: &NamedCurve) -> Vec<QGCertificate> {
    discover(&c.form, &c.seeds, DEFAULT_DISCOVERY_CAP).unwrap_or_else(|e| panic!("{}: {e}", c.name))
}

/// Every certificate passes the independent verifier.
pub fn all_verified(c: &TriForm, certs: &[QGCertificate]) -> Check {
    for cert in certs {
        ensure(verify_certificate(c, cert), || format!("certificate at {} fails verification", cert.point))?;
    }
    Ok(())
}

/// solve_homology succeeds exactly for the divisors of the certified order.
pub fn divisor_consistency(c: &TriForm, cert: &QGCertificate) -> Check {
    let (_, moved) = normalize_center(c, &cert.point).map_err(|e| e.to_string())?;
    let r = cert.projection_degree;
    for m in divisors(r).into_iter().filter(|&m| m >= 2) {
        let Ok(zeta) = c.ctx().zeta(m) else { continue };
        let solved = solve_homology(&moved, r, &zeta).is_some();
        ensure(solved == (cert.order % m == 0), || {
            format!("at {}: order {} but solve_homology for m = {m} gave {solved}", cert.point, cert.order)
        })?;
    }
    Ok(())
}

pub fn order_divides_degree(cert: &QGCertificate) -> Check {
    ensure(cert.projection_degree % cert.order == 0, || {
        format!("order {} does not divide {} at {}", cert.order, cert.projection_degree, cert.point)
    })
}

fn cyclic_group(g: &ProjTransform, n: u32) -> HashSet<ProjTransform> {
    (0..n).map(|k| g.pow(k)).collect()
}

/// Groups at distinct points share only the identity.
pub fn groups_meet_trivially(certs: &[QGCertificate]) -> Check {
    let groups: Vec<HashSet<ProjTransform>> = certs
        .iter()
        .map(|c| cyclic_group(c.generator.as_ref().unwrap(), c.order))
        .collect();
    for i in 0..certs.len() {
        for j in i + 1..certs.len() {
            let common = groups[i].intersection(&groups[j]).count();
            ensure(common == 1, || {
                format!("groups at {} and {} share {common} elements", certs[i].point, certs[j].point)
            })?;
        }
    }
    Ok(())
}

/// I_P(C, T_PC) ≡ 1 mod n for inner P; for curve points Q on the axis,
/// I_Q(C, T_QC) ≡ 0 mod n and P lies on T_QC.
pub fn ramification_congruences(c: &TriForm, cert: &QGCertificate) -> Check {
    let n = cert.order;
    let p = &cert.point;
    let err = |e: quasigalois::Error| format!("at {p}: {e}");
    if cert.on_curve {
        let t = tangent_line(c, p).map_err(err)?;
        let i = intersection_multiplicity(c, &t, p).map_err(err)?;
        ensure(i % n == 1 % n, || format!("I_P = {i} at inner {p}, order {n}"))?;
    }
    let axis = cert.axis.as_ref().unwrap();
    let on_axis = curve_line_points(c, axis).map_err(err)?;
    for q in &on_axis.points {
        let t = tangent_line(c, q).map_err(err)?;
        let i = intersection_multiplicity(c, &t, q).map_err(err)?;
        ensure(i % n == 0, || format!("I_Q = {i} at axis point {q} of {p}, order {n}"))?;
        ensure(t.contains(p), || format!("tangent at axis point {q} misses {p}"))?;
    }
    Ok(())
}

/// For outer points, σ₁(P₂) = P₂ forces σ₂(P₁) = P₁.
pub fn one_sided_fixation_is_mutual(certs: &[QGCertificate]) -> Check {
    let outer: Vec<&QGCertificate> = certs.iter().filter(|c| !c.on_curve).collect();
    for a in &outer {
        for b in &outer {
            if a.point == b.point {
                continue;
            }
            let w = quasigalois::qgal::is_gpair(a, b).map_err(|e| e.to_string())?;
            ensure(!w.first_fixes_second || w.second_fixes_first, || {
                format!("{} fixes {} but not conversely", a.point, b.point)
            })?;
        }
    }
    Ok(())
}

pub fn dual_is_involution(cert: &QGCertificate) -> Check {
    let d = dual_certificate(cert).map_err(|e| e.to_string())?;
    let dd = dual_certificate(&d).map_err(|e| e.to_string())?;
    ensure(d.order == cert.order && &dd == cert, || format!("dual round trip fails at {}", cert.point))
}

pub fn bounds_hold(c: &TriForm, certs: &[QGCertificate]) -> Check {
    let report = census(c.degree(), certs);
    for b in report.inner_bounds.iter().chain(&report.outer_bounds).chain(&report.degree_bounds) {
        ensure(b.holds, || format!("bound {} violated: {}", b.name, b.detail))?;
    }
    Ok(())
}

/// All per-certificate and pairwise properties on one discovered set.
pub fn certificate_properties(c: &TriForm, certs: &[QGCertificate]) -> Check {
    all_verified(c, certs)?;
    for cert in certs {
        order_divides_degree(cert)?;
        divisor_consistency(c, cert)?;
        ramification_congruences(c, cert)?;
        dual_is_involution(cert)?;
    }
    groups_meet_trivially(certs)?;
    one_sided_fixation_is_mutual(certs)?;
    bounds_hold(c, certs)
}

/// Random F = Σ G_{d−ni}(Y,Z)·X^{ni} moved by a random integer matrix; the
/// order at the moved center is a multiple of n, and the certificate's own
/// coordinates leave only X-exponents divisible by it.
pub fn standard_form_roundtrip(instances: usize, seed: u64) -> Check {
    let ctx = FieldContext::cyclotomic(12).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shapes = [(4u32, 2u32), (4, 4), (6, 2), (6, 3), (6, 6)];
    for k in 0..instances {
        let (d, n) = shapes[k % shapes.len()];
        let f = random_standard_form(&ctx, d, n, &mut rng);
        let b = random_invertible(&ctx, &mut rng);
        let g = b.pullback(&f);
        let p = b.inverse().apply(&ProjPoint::vertex(&ctx, 0));
        let cert = quasi_galois_order(&g, &p).map_err(|e| format!("instance {k}: {e}"))?;
        ensure(cert.order % n == 0, || format!("instance {k}: order {} not a multiple of {n}", cert.order))?;
        ensure(verify_certificate(&g, &cert), || format!("instance {k}: certificate fails"))?;
        let s = standard_coordinates(&cert).map_err(|e| e.to_string())?;
        let h = s.inverse().pullback(&g);
        ensure(h.terms().keys().all(|e| e[0] % cert.order == 0), || {
            format!("instance {k}: standard coordinates leave {h}")
        })?;
    }
    Ok(())
}

fn random_standard_form(ctx: &Arc<FieldContext>, d: u32, n: u32, rng: &mut ChaCha8Rng) -> TriForm {
    loop {
        let mut terms = Vec::new();
        for i in (0..=d).step_by(n as usize) {
            let rest = d - i;
            for j in 0..=rest {
                let c: i64 = if i == d { rng.gen_range(1..=3) } else { rng.gen_range(-4..=4) };
                terms.push(([i, j, rest - j], ctx.from_int(c)));
            }
        }
        let f = TriForm::from_terms(ctx, d, terms).unwrap();
        let middle = n == d || f.x_slices().keys().any(|&i| i > 0 && i < d);
        let top = !f.coeff(&[0, d, 0]).is_zero() || !f.coeff(&[0, 0, d]).is_zero();
        if middle && top {
            return f;
        }
    }
}

fn random_invertible(ctx: &Arc<FieldContext>, rng: &mut ChaCha8Rng) -> ProjTransform {
    loop {
        let m: [[i64; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(-3..=3)));
        if let Ok(t) = ProjTransform::from_ints(ctx, m) {
            return t;
        }
    }
}
