use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactnum::{parse_triple, FieldContext, FieldElement};

fn normalize(mut c: [FieldElement; 3]) -> Result<[FieldElement; 3]> {
    let pivot = c
        .iter()
        .position(|x| !x.is_zero())
        .ok_or_else(|| Error::BadParams("projective coordinates are all zero".into()))?;
    if !c[pivot].is_one() {
        let inv = c[pivot].inverse()?;
        for x in c.iter_mut() {
            *x = &*x * &inv;
        }
    }
    Ok(c)
}

/// Point of the projective plane, scaled so its first nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: [FieldElement; 3],
}

impl ProjPoint {
    pub fn new(coords: [FieldElement; 3]) -> Result<Self> {
        Ok(ProjPoint {
            coords: normalize(coords)?,
        })
    }

    /// Parses a literal such as `"1:z:0"`.
    pub fn parse(ctx: &Arc<FieldContext>, literal: &str) -> Result<Self> {
        let coords = parse_triple(ctx, literal)?;
        ProjPoint::new(coords).map_err(|_| Error::Parse {
            input: literal.to_string(),
            position: 0,
            message: "projective coordinates are all zero".into(),
        })
    }

    /// A coordinate vertex: (1:0:0), (0:1:0) or (0:0:1).
    pub fn vertex(ctx: &Arc<FieldContext>, i: usize) -> Self {
        let mut c = [ctx.zero(), ctx.zero(), ctx.zero()];
        c[i] = ctx.one();
        ProjPoint { coords: c }
    }

    pub fn from_ints(ctx: &Arc<FieldContext>, c: [i64; 3]) -> Result<Self> {
        ProjPoint::new(c.map(|x| ctx.from_int(x)))
    }

    pub fn coords(&self) -> &[FieldElement; 3] {
        &self.coords
    }

    pub fn ctx(&self) -> &Arc<FieldContext> {
        self.coords[0].ctx()
    }

    /// Index of the first nonzero coordinate.
    pub fn pivot(&self) -> usize {
        self.coords.iter().position(|x| !x.is_zero()).expect("nonzero point")
    }

    pub fn lift(&self, target: &Arc<FieldContext>) -> Result<Self> {
        Ok(ProjPoint {
            coords: [
                self.coords[0].lift(target)?,
                self.coords[1].lift(target)?,
                self.coords[2].lift(target)?,
            ],
        })
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.coords[0], self.coords[1], self.coords[2])
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// Line aX + bY + cZ = 0, stored by its normalized dual coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjLine {
    coords: [FieldElement; 3],
}

impl ProjLine {
    pub fn new(coords: [FieldElement; 3]) -> Result<Self> {
        Ok(ProjLine {
            coords: normalize(coords)?,
        })
    }

    pub fn parse(ctx: &Arc<FieldContext>, literal: &str) -> Result<Self> {
        let coords = parse_triple(ctx, literal)?;
        ProjLine::new(coords)
    }

    pub fn coords(&self) -> &[FieldElement; 3] {
        &self.coords
    }

    pub fn ctx(&self) -> &Arc<FieldContext> {
        self.coords[0].ctx()
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        dot(&self.coords, p.coords()).is_zero()
    }

    /// The same coordinates read as a point of the dual plane.
    pub fn as_point(&self) -> ProjPoint {
        ProjPoint {
            coords: self.coords.clone(),
        }
    }

    pub fn from_point(p: &ProjPoint) -> ProjLine {
        ProjLine {
            coords: p.coords().clone(),
        }
    }

    /// Two distinct points spanning the line.
    pub fn points(&self) -> [ProjPoint; 2] {
        let [a, b, c] = &self.coords;
        let z = a.ctx().zero();
        let candidates = [
            [b.clone(), -a, z.clone()],
            [c.clone(), z.clone(), -a],
            [z, c.clone(), -b],
        ];
        let mut found: Vec<ProjPoint> = Vec::new();
        for cand in candidates {
            if let Ok(p) = ProjPoint::new(cand) {
                if !found.contains(&p) {
                    found.push(p);
                }
            }
        }
        [found[0].clone(), found[1].clone()]
    }

    /// A point on the line other than `q`.
    pub fn other_point(&self, q: &ProjPoint) -> ProjPoint {
        let [p0, p1] = self.points();
        if &p0 == q {
            p1
        } else {
            p0
        }
    }
}

impl fmt::Display for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}:{}]", self.coords[0], self.coords[1], self.coords[2])
    }
}

impl fmt::Debug for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let form = crate::polyring::TriForm::linear(self.ctx(), &self.coords);
        write!(f, "{form} = 0")
    }
}

pub fn dot(a: &[FieldElement; 3], b: &[FieldElement; 3]) -> FieldElement {
    &(&(&a[0] * &b[0]) + &(&a[1] * &b[1])) + &(&a[2] * &b[2])
}

pub fn cross(a: &[FieldElement; 3], b: &[FieldElement; 3]) -> [FieldElement; 3] {
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

/// The line through two distinct points.
pub fn line_through(p: &ProjPoint, q: &ProjPoint) -> Result<ProjLine> {
    if p == q {
        return Err(Error::EqualPoints);
    }
    ProjLine::new(cross(p.coords(), q.coords()))
}

/// Intersection point of two distinct lines.
pub fn meet(l: &ProjLine, m: &ProjLine) -> Result<ProjPoint> {
    if l == m {
        return Err(Error::EqualPoints);
    }
    ProjPoint::new(cross(l.coords(), m.coords()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines_through_points() {
        let ctx = FieldContext::cyclotomic(1).unwrap();
        let p = ProjPoint::vertex(&ctx, 0);
        let q = ProjPoint::vertex(&ctx, 1);
        assert_eq!(line_through(&p, &q).unwrap(), ProjLine::parse(&ctx, "0:0:1").unwrap());
        let r = ProjPoint::from_ints(&ctx, [1, 1, 1]).unwrap();
        assert_eq!(line_through(&r, &p).unwrap(), ProjLine::parse(&ctx, "0:1:-1").unwrap());
        assert!(matches!(line_through(&p, &p), Err(Error::EqualPoints)));
    }

    #[test]
    fn normalization_and_parsing() {
        let ctx = FieldContext::cyclotomic(4).unwrap();
        let p = ProjPoint::parse(&ctx, "z:1:0").unwrap();
        assert_eq!(p.to_string(), "1:-z:0");
        assert!(ProjPoint::parse(&ctx, "0:0:0").is_err());
        assert!(matches!(ProjPoint::parse(&ctx, "1:0:"), Err(Error::Parse { .. })));
        let l = ProjLine::parse(&ctx, "0:2:2").unwrap();
        for q in l.points() {
            assert!(l.contains(&q));
        }
    }
}
