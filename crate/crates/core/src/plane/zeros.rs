use std::collections::BTreeSet;

use super::local::{flex_contribution, restrict_to_line};
use super::point::{ProjLine, ProjPoint};
use super::transform::ProjTransform;
use crate::error::Result;
use crate::polyring::roots::roots_in_field;
use crate::polyring::{resultant, Poly, TriForm, UniPoly};

/// Points found in the context field, sorted. `complete` means every
/// point over the algebraic closure was accounted for.
#[derive(Clone, Debug)]
pub struct PointSet {
    pub points: Vec<ProjPoint>,
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Smoothness {
    Smooth,
    Singular(ProjPoint),
    Unknown,
}

type BiPoly = Poly<UniPoly>;

/// F(x, y, 1) as a polynomial in y with coefficients in K[x].
fn chart_z(f: &TriForm) -> BiPoly {
    let ctx = f.ctx();
    let xzero = UniPoly::zero(ctx.zero());
    let ydeg = f.terms().keys().map(|e| e[1]).max().unwrap_or(0) as usize;
    let mut cols: Vec<Vec<_>> = vec![Vec::new(); ydeg + 1];
    for (e, c) in f.terms() {
        let col = &mut cols[e[1] as usize];
        if col.len() <= e[0] as usize {
            col.resize(e[0] as usize + 1, ctx.zero());
        }
        col[e[0] as usize] = c.clone();
    }
    Poly::new(
        cols.into_iter().map(|c| Poly::new(c, ctx.zero())).collect(),
        xzero,
    )
}

/// Common zeros of a list of forms over the context field.
pub fn common_zeros(forms: &[TriForm]) -> Result<PointSet> {
    let forms: Vec<&TriForm> = forms.iter().filter(|f| !f.is_zero()).collect();
    let Some(first) = forms.first() else {
        return Ok(PointSet {
            points: Vec::new(),
            complete: false,
        });
    };
    let ctx = first.ctx().clone();
    let mut points = BTreeSet::new();
    let mut complete = true;

    let v = ProjPoint::vertex(&ctx, 0);
    if forms.iter().all(|f| f.eval(v.coords()).is_zero()) {
        points.insert(v);
    }

    // points (t:1:0) on the line Z = 0
    let (y_pt, x_pt) = (ProjPoint::vertex(&ctx, 1), ProjPoint::vertex(&ctx, 0));
    let mut g = UniPoly::zero(ctx.zero());
    for f in &forms {
        g = g.gcd(&f.along_line(y_pt.coords(), x_pt.coords()));
    }
    if g.is_zero() {
        complete = false;
    } else if !g.is_constant() {
        let rs = roots_in_field(&g)?;
        complete &= rs.complete;
        for (t, _) in rs.roots {
            points.insert(ProjPoint::new([t, ctx.one(), ctx.zero()])?);
        }
    }

    // affine chart Z = 1
    let bis: Vec<BiPoly> = forms.iter().map(|f| chart_z(f)).collect();
    let (ys, xs): (Vec<&BiPoly>, Vec<&BiPoly>) = bis.iter().partition(|b| b.degree().unwrap_or(0) > 0);
    let mut h = UniPoly::zero(ctx.zero());
    for b in &xs {
        h = h.gcd(&b.coeff(0));
    }
    let mut bounded = !xs.is_empty() || ys.len() >= 2;
    if ys.len() >= 2 {
        'pairs: for i in 0..ys.len() {
            for j in i + 1..ys.len() {
                if h.degree() == Some(0) {
                    break 'pairs;
                }
                h = h.gcd(&resultant(ys[i], ys[j]));
            }
        }
    }
    if h.is_zero() {
        bounded = false;
    }
    if !bounded {
        complete = false;
    } else if !h.is_constant() {
        let rs = roots_in_field(&h)?;
        complete &= rs.complete;
        for (x0, _) in rs.roots {
            let mut gy = UniPoly::zero(ctx.zero());
            for b in &ys {
                gy = gy.gcd(&b.map(ctx.zero(), |c| c.eval(&x0)));
            }
            if ys.is_empty() || gy.is_zero() {
                complete = false;
                continue;
            }
            if gy.is_constant() {
                continue;
            }
            let ry = roots_in_field(&gy)?;
            complete &= ry.complete;
            for (y0, _) in ry.roots {
                points.insert(ProjPoint::new([x0.clone(), y0, ctx.one()])?);
            }
        }
    }
    Ok(PointSet {
        points: points.into_iter().collect(),
        complete,
    })
}

/// Points of C on a line, over the context field.
pub fn curve_line_points(c: &TriForm, line: &ProjLine) -> Result<PointSet> {
    let [p0, p1] = line.points();
    let g = restrict_to_line(c, &p0, &p1)?;
    let mut points = BTreeSet::new();
    if c.eval(p1.coords()).is_zero() {
        points.insert(p1.clone());
    }
    let rs = roots_in_field(&g)?;
    for (t, _) in &rs.roots {
        let q: [_; 3] = std::array::from_fn(|i| &p0.coords()[i] + &(t * &p1.coords()[i]));
        points.insert(ProjPoint::new(q)?);
    }
    Ok(PointSet {
        points: points.into_iter().collect(),
        complete: rs.complete,
    })
}

/// Singular points are common zeros of the three partials (Euler's relation
/// puts them on C). A verified witness or a certified empty set decides;
/// anything else is `Unknown`.
pub fn is_smooth(c: &TriForm) -> Smoothness {
    let grad = c.gradient();
    let Ok(zs) = common_zeros(&grad) else {
        return Smoothness::Unknown;
    };
    if let Some(p) = zs.points.into_iter().next() {
        return Smoothness::Singular(p);
    }
    if zs.complete {
        return Smoothness::Smooth;
    }
    // Spurious eliminant factors depend on the coordinates; retry in a
    // generic frame.
    let ctx = c.ctx();
    let a = ProjTransform::from_ints(ctx, [[1, 1, 2], [0, 1, 3], [1, 0, 1]]).expect("invertible");
    let moved = a.pullback(c);
    match common_zeros(&moved.gradient()) {
        Ok(zs) => match zs.points.first() {
            Some(q) => Smoothness::Singular(a.apply(q)),
            None if zs.complete => Smoothness::Smooth,
            None => Smoothness::Unknown,
        },
        Err(_) => Smoothness::Unknown,
    }
}

/// Flexes of C over the context field with their contributions
/// I_Q(C, T_QC) − 2, and whether C ∩ Hess(C) was fully resolved.
pub fn field_flexes(c: &TriForm) -> Result<(Vec<(ProjPoint, u32)>, bool)> {
    let zs = common_zeros(&[c.clone(), c.hessian()])?;
    let mut out = Vec::with_capacity(zs.points.len());
    for p in zs.points {
        let w = flex_contribution(c, &p)?;
        out.push((p, w));
    }
    Ok((out, zs.complete))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::FieldContext;
    use std::sync::Arc;

    fn fermat(ctx: &Arc<FieldContext>, d: u32) -> TriForm {
        TriForm::from_int_terms(ctx, &[([d, 0, 0], 1), ([0, d, 0], 1), ([0, 0, d], 1)])
    }

    #[test]
    fn fermat_curves_are_smooth() {
        for d in [3u32, 4, 5, 6] {
            let ctx = FieldContext::cyclotomic(d).unwrap();
            assert_eq!(is_smooth(&fermat(&ctx, d)), Smoothness::Smooth, "d = {d}");
        }
    }

    #[test]
    fn tacnodal_quartic_is_singular() {
        let ctx = FieldContext::cyclotomic(4).unwrap();
        let f = TriForm::from_int_terms(&ctx, &[([4, 0, 0], 1), ([0, 4, 0], 1), ([0, 0, 4], 1), ([2, 2, 0], 2)]);
        let Smoothness::Singular(p) = is_smooth(&f) else {
            panic!("expected a singular point");
        };
        let candidates = [
            ProjPoint::parse(&ctx, "1:z:0").unwrap(),
            ProjPoint::parse(&ctx, "1:-z:0").unwrap(),
        ];
        assert!(candidates.contains(&p));
        assert!(f.gradient().iter().all(|g| g.eval(p.coords()).is_zero()));
    }

    #[test]
    fn hessian_sextic_is_smooth() {
        let ctx = FieldContext::cyclotomic(3).unwrap();
        let f = TriForm::from_int_terms(
            &ctx,
            &[
                ([6, 0, 0], 1),
                ([0, 6, 0], 1),
                ([0, 0, 6], 1),
                ([3, 3, 0], -10),
                ([0, 3, 3], -10),
                ([3, 0, 3], -10),
            ],
        );
        assert_eq!(is_smooth(&f), Smoothness::Smooth);
    }

    #[test]
    fn nodal_cubic_witness() {
        let ctx = FieldContext::cyclotomic(1).unwrap();
        // Y²Z − X³ − X²Z has a node at (0:0:1)
        let f = TriForm::from_int_terms(&ctx, &[([0, 2, 1], 1), ([3, 0, 0], -1), ([2, 0, 1], -1)]);
        assert_eq!(is_smooth(&f), Smoothness::Singular(ProjPoint::vertex(&ctx, 2)));
    }

    #[test]
    fn fermat_flexes_in_large_field() {
        let ctx = FieldContext::cyclotomic(8).unwrap();
        let (flexes, complete) = field_flexes(&fermat(&ctx, 4)).unwrap();
        assert!(complete);
        assert_eq!(flexes.len(), 12);
        assert_eq!(flexes.iter().map(|(_, w)| w).sum::<u32>(), 24);
    }

    #[test]
    fn line_points_sum_to_degree() {
        let ctx = FieldContext::cyclotomic(8).unwrap();
        let f = fermat(&ctx, 4);
        let z0 = ProjLine::parse(&ctx, "0:0:1").unwrap();
        let ps = curve_line_points(&f, &z0).unwrap();
        assert!(ps.complete);
        assert_eq!(ps.points.len(), 4);
        let total: u32 = ps
            .points
            .iter()
            .map(|q| super::super::local::intersection_multiplicity(&f, &z0, q).unwrap())
            .sum();
        assert_eq!(total, 4);
    }
}
