use std::fmt;
use std::sync::Arc;

use super::point::{ProjLine, ProjPoint};
use crate::error::{Error, Result};
use crate::exactnum::{FieldContext, FieldElement};
use crate::polyring::{det3, Matrix3, TriForm};

pub fn identity(ctx: &Arc<FieldContext>) -> Matrix3 {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { ctx.one() } else { ctx.zero() }))
}

pub fn mat_mul(a: &Matrix3, b: &Matrix3) -> Matrix3 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut acc = &a[i][0] * &b[0][j];
            for k in 1..3 {
                if !a[i][k].is_zero() && !b[k][j].is_zero() {
                    acc = &acc + &(&a[i][k] * &b[k][j]);
                }
            }
            acc
        })
    })
}

pub fn mat_vec(a: &Matrix3, v: &[FieldElement; 3]) -> [FieldElement; 3] {
    std::array::from_fn(|i| {
        let mut acc = &a[i][0] * &v[0];
        for k in 1..3 {
            acc = &acc + &(&a[i][k] * &v[k]);
        }
        acc
    })
}

pub fn transpose(a: &Matrix3) -> Matrix3 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i].clone()))
}

/// Adjugate matrix; A·adj(A) = det(A)·I.
pub fn adjugate(a: &Matrix3) -> Matrix3 {
    let c = |r1: usize, r2: usize, c1: usize, c2: usize| &(&a[r1][c1] * &a[r2][c2]) - &(&a[r1][c2] * &a[r2][c1]);
    [
        [c(1, 2, 1, 2), -c(0, 2, 1, 2), c(0, 1, 1, 2)],
        [-c(1, 2, 0, 2), c(0, 2, 0, 2), -c(0, 1, 0, 2)],
        [c(1, 2, 0, 1), -c(0, 2, 0, 1), c(0, 1, 0, 1)],
    ]
}

pub fn mat_inverse(a: &Matrix3) -> Result<Matrix3> {
    let d = det3(a);
    if d.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let inv = d.inverse()?;
    Ok(adjugate(a).map(|row| row.map(|x| &x * &inv)))
}

pub fn mat_scale(a: &Matrix3, c: &FieldElement) -> Matrix3 {
    std::array::from_fn(|i| std::array::from_fn(|j| &a[i][j] * c))
}

pub fn mat_sub(a: &Matrix3, b: &Matrix3) -> Matrix3 {
    std::array::from_fn(|i| std::array::from_fn(|j| &a[i][j] - &b[i][j]))
}

/// Invertible 3×3 matrix up to scalars, scaled so the first nonzero entry
/// in row-major order is 1. Acts on column vectors: v ↦ A·v.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjTransform {
    m: Matrix3,
}

impl ProjTransform {
    pub fn new(m: Matrix3) -> Result<Self> {
        if det3(&m).is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(ProjTransform { m: normalize(m) })
    }

    pub fn identity(ctx: &Arc<FieldContext>) -> Self {
        ProjTransform { m: identity(ctx) }
    }

    /// diag(a, b, c).
    pub fn diagonal(d: [FieldElement; 3]) -> Result<Self> {
        let ctx = d[0].ctx().clone();
        let mut m = identity(&ctx);
        for (i, x) in d.into_iter().enumerate() {
            m[i][i] = x;
        }
        ProjTransform::new(m)
    }

    /// Permutation matrix sending coordinate j to position perm[j].
    pub fn permutation(ctx: &Arc<FieldContext>, perm: [usize; 3]) -> Self {
        let mut m: Matrix3 = std::array::from_fn(|_| std::array::from_fn(|_| ctx.zero()));
        for (j, &i) in perm.iter().enumerate() {
            m[i][j] = ctx.one();
        }
        ProjTransform { m }
    }

    pub fn from_ints(ctx: &Arc<FieldContext>, rows: [[i64; 3]; 3]) -> Result<Self> {
        ProjTransform::new(rows.map(|r| r.map(|x| ctx.from_int(x))))
    }

    pub fn matrix(&self) -> &Matrix3 {
        &self.m
    }

    pub fn ctx(&self) -> &Arc<FieldContext> {
        self.m[0][0].ctx()
    }

    /// self ∘ other (apply `other` first).
    pub fn compose(&self, other: &ProjTransform) -> ProjTransform {
        ProjTransform {
            m: normalize(mat_mul(&self.m, &other.m)),
        }
    }

    pub fn inverse(&self) -> ProjTransform {
        // adj(A) is a nonzero multiple of A⁻¹, which is all that matters projectively
        ProjTransform {
            m: normalize(adjugate(&self.m)),
        }
    }

    /// (A⁻¹)ᵀ: the induced action on line coordinates.
    pub fn inverse_transpose(&self) -> ProjTransform {
        ProjTransform {
            m: normalize(transpose(&adjugate(&self.m))),
        }
    }

    pub fn transpose(&self) -> ProjTransform {
        ProjTransform {
            m: normalize(transpose(&self.m)),
        }
    }

    pub fn conjugate_by(&self, tau: &ProjTransform) -> ProjTransform {
        tau.compose(self).compose(&tau.inverse())
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        ProjPoint::new(mat_vec(&self.m, p.coords())).expect("invertible map")
    }

    pub fn apply_line(&self, l: &ProjLine) -> ProjLine {
        let it = transpose(&adjugate(&self.m));
        ProjLine::new(mat_vec(&it, l.coords())).expect("invertible map")
    }

    pub fn is_identity(&self) -> bool {
        self.m == identity(self.ctx())
    }

    pub fn pow(&self, k: u32) -> ProjTransform {
        let mut acc = ProjTransform::identity(self.ctx());
        for _ in 0..k {
            acc = acc.compose(self);
        }
        acc
    }

    /// Projective order, if at most `limit`.
    pub fn order(&self, limit: u32) -> Option<u32> {
        let mut acc = self.clone();
        for k in 1..=limit {
            if acc.is_identity() {
                return Some(k);
            }
            acc = acc.compose(self);
        }
        None
    }

    /// F ∘ A.
    pub fn pullback(&self, f: &TriForm) -> TriForm {
        f.substitute_unchecked(&self.m)
    }

    /// Whether F ∘ A = c·F for a nonzero scalar c.
    pub fn preserves(&self, f: &TriForm) -> bool {
        self.pullback(f).scalar_ratio(f).is_some()
    }
}

fn normalize(m: Matrix3) -> Matrix3 {
    let pivot = m
        .iter()
        .flatten()
        .find(|x| !x.is_zero())
        .expect("nonzero matrix")
        .clone();
    if pivot.is_one() {
        return m;
    }
    let inv = pivot.inverse().expect("nonzero pivot");
    mat_scale(&m, &inv)
}

impl fmt::Display for ProjTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .m
            .iter()
            .map(|r| format!("[{}, {}, {}]", r[0], r[1], r[2]))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl fmt::Debug for ProjTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::point::line_through;

    #[test]
    fn inverse_and_order() {
        let ctx = FieldContext::cyclotomic(3).unwrap();
        let w = ctx.zeta(3).unwrap();
        let s = ProjTransform::diagonal([w.clone(), ctx.one(), ctx.one()]).unwrap();
        assert_eq!(s.order(10), Some(3));
        assert!(s.compose(&s.inverse()).is_identity());
        // normalization: diag(1, w^-1, w^-1)
        assert!(s.matrix()[0][0].is_one());
        let a = ProjTransform::from_ints(&ctx, [[1, 2, 0], [0, 1, 3], [1, 0, 1]]).unwrap();
        assert!(a.compose(&a.inverse()).is_identity());
        assert_eq!(a.inverse_transpose().inverse_transpose(), a);
        assert!(matches!(
            ProjTransform::from_ints(&ctx, [[1, 2, 3], [2, 4, 6], [0, 0, 1]]),
            Err(Error::SingularMatrix)
        ));
    }

    #[test]
    fn incidence_is_preserved() {
        let ctx = FieldContext::cyclotomic(4).unwrap();
        let a = ProjTransform::new([
            [ctx.one(), ctx.zeta(4).unwrap(), ctx.zero()],
            [ctx.from_int(2), ctx.zero(), ctx.one()],
            [ctx.zero(), ctx.one(), ctx.from_int(-3)],
        ])
        .unwrap();
        let p = ProjPoint::from_ints(&ctx, [1, 2, 3]).unwrap();
        let q = ProjPoint::from_ints(&ctx, [0, 1, -1]).unwrap();
        let l = line_through(&p, &q).unwrap();
        assert!(a.apply_line(&l).contains(&a.apply(&p)));
        assert!(a.apply_line(&l).contains(&a.apply(&q)));
    }
}
