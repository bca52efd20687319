use super::point::{line_through, ProjLine, ProjPoint};
use crate::error::{Error, Result};
use crate::polyring::{TriForm, UniPoly};

pub fn on_curve(c: &TriForm, p: &ProjPoint) -> bool {
    c.eval(p.coords()).is_zero()
}

/// g(t) = F(P0 + t·P1) for normalized P0, P1; t = 0 lands on P0.
pub fn restrict_to_line(f: &TriForm, p0: &ProjPoint, p1: &ProjPoint) -> Result<UniPoly> {
    if p0 == p1 {
        return Err(Error::DegenerateLine);
    }
    let g = f.along_line(p0.coords(), p1.coords());
    if g.is_zero() {
        return Err(Error::LineInCurve);
    }
    Ok(g)
}

/// Line with dual coordinates ∇F(Q).
pub fn tangent_line(c: &TriForm, q: &ProjPoint) -> Result<ProjLine> {
    if !on_curve(c, q) {
        return Err(Error::NotOnCurve(q.to_string()));
    }
    let g = c.gradient().map(|d| d.eval(q.coords()));
    ProjLine::new(g).map_err(|_| Error::SingularPoint(q.to_string()))
}

/// I_Q(C, ℓ); zero when Q is not on C.
pub fn intersection_multiplicity(c: &TriForm, line: &ProjLine, q: &ProjPoint) -> Result<u32> {
    if !line.contains(q) {
        return Err(Error::NotIncident(q.to_string()));
    }
    let p1 = line.other_point(q);
    let g = restrict_to_line(c, q, &p1)?;
    Ok(g.vanishing_order(&c.ctx().zero())? as u32)
}

/// Ramification index e_Q of the projection from P at a smooth point Q.
pub fn ramification_index(c: &TriForm, p: &ProjPoint, q: &ProjPoint) -> Result<u32> {
    let tangent = tangent_line(c, q)?;
    if p == q {
        Ok(intersection_multiplicity(c, &tangent, q)? - 1)
    } else {
        intersection_multiplicity(c, &line_through(p, q)?, q)
    }
}

/// I_Q(C, T_QC) − 2 at a smooth point.
pub fn flex_contribution(c: &TriForm, q: &ProjPoint) -> Result<u32> {
    let tangent = tangent_line(c, q)?;
    Ok(intersection_multiplicity(c, &tangent, q)? - 2)
}

/// d − mult_P(C): the X-degree after moving P to (1:0:0).
pub fn projection_degree(c: &TriForm, p: &ProjPoint) -> Result<u32> {
    let (_, moved) = crate::qgal::normalize_center(c, p)?;
    let r = moved.deg_x();
    if r <= 1 {
        return Err(Error::ProjectionDegenerate {
            point: p.to_string(),
            degree: r,
        });
    }
    Ok(r)
}
