use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::FieldElement;

/// Minimal integral-domain interface shared by field elements and
/// polynomials over them, so resultants work over K and over K[x].
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self / other` when the division is exact, `None` otherwise.
    fn exact_div(&self, other: &Self) -> Option<Self>;

    fn pow(&self, e: usize) -> Self {
        let mut acc = self.one_like();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl Ring for FieldElement {
    fn zero_like(&self) -> Self {
        self.ctx().zero()
    }
    fn one_like(&self) -> Self {
        self.ctx().one()
    }
    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        self.div(other).ok()
    }
    fn pow(&self, e: usize) -> Self {
        FieldElement::pow(self, e as u64)
    }
}

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
///
/// A copy of the coefficient ring's zero is kept so the zero polynomial
/// still knows where it lives.
#[derive(Clone)]
pub struct Poly<R: Ring> {
    coeffs: Vec<R>,
    zero: R,
}

/// Polynomial in one variable over a field context.
pub type UniPoly = Poly<FieldElement>;

impl<R: Ring> PartialEq for Poly<R> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<R: Ring> Poly<R> {
    pub fn new(mut coeffs: Vec<R>, zero: R) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs, zero }
    }

    pub fn zero(zero: R) -> Self {
        Poly {
            coeffs: Vec::new(),
            zero,
        }
    }

    pub fn constant(c: R) -> Self {
        let zero = c.zero_like();
        Poly::new(vec![c], zero)
    }

    /// The polynomial `c·t^k`.
    pub fn monomial(c: R, k: usize) -> Self {
        let zero = c.zero_like();
        let mut coeffs = vec![zero.clone(); k];
        coeffs.push(c);
        Poly::new(coeffs, zero)
    }

    /// `t − a`.
    pub fn linear_root(a: &R) -> Self {
        Poly::new(vec![a.neg(), a.one_like()], a.zero_like())
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn base_zero(&self) -> &R {
        &self.zero
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> R {
        self.coeffs.last().cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &R) -> R {
        let mut acc = self.zero.clone();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k).add(&other.coeff(k))).collect();
        Poly::new(coeffs, self.zero.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k).sub(&other.coeff(k))).collect();
        Poly::new(coeffs, self.zero.clone())
    }

    pub fn neg(&self) -> Self {
        Poly::new(self.coeffs.iter().map(Ring::neg).collect(), self.zero.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.zero.clone());
        }
        let mut out = vec![self.zero.clone(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Poly::new(out, self.zero.clone())
    }

    pub fn scale(&self, c: &R) -> Self {
        Poly::new(self.coeffs.iter().map(|x| x.mul(c)).collect(), self.zero.clone())
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Poly::constant(self.zero.one_like());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Formal derivative (integer multiples via repeated addition).
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| {
                let mut acc = self.zero.clone();
                for _ in 0..k {
                    acc = acc.add(c);
                }
                acc
            })
            .collect();
        Poly::new(coeffs, self.zero.clone())
    }

    /// Pseudo-remainder: lc(b)^{deg a − deg b + 1}·a mod b.
    pub fn prem(&self, b: &Self) -> Self {
        let db = b.degree().expect("pseudo-division by zero");
        let Some(da) = self.degree() else {
            return self.clone();
        };
        if da < db {
            return self.clone();
        }
        let lcb = b.lc();
        let mut r = self.clone();
        let mut e = da - db + 1;
        while let Some(k) = r.degree() {
            if k < db {
                break;
            }
            let shifted = Poly::monomial(r.lc(), k - db).mul(b);
            r = r.scale(&lcb).sub(&shifted);
            e -= 1;
        }
        r.scale(&lcb.pow(e))
    }

    /// Exact quotient `self / b`, or `None` when `b` does not divide.
    pub fn exact_div(&self, b: &Self) -> Option<Self> {
        let db = b.degree()?;
        if self.is_zero() {
            return Some(self.clone());
        }
        let da = self.degree()?;
        if da < db {
            return None;
        }
        let lcb = b.lc();
        let mut r = self.coeffs.clone();
        let mut q = vec![self.zero.clone(); da - db + 1];
        for k in (0..=da - db).rev() {
            let c = &r[k + db];
            if c.is_zero() {
                continue;
            }
            let qk = c.exact_div(&lcb)?;
            for (i, bi) in b.coeffs.iter().enumerate() {
                r[k + i] = r[k + i].sub(&qk.mul(bi));
            }
            q[k] = qk;
        }
        if r.iter().all(|c| c.is_zero()) {
            Some(Poly::new(q, self.zero.clone()))
        } else {
            None
        }
    }

    pub fn map<S: Ring>(&self, zero: S, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(f).collect(), zero)
    }
}

impl<R: Ring> Ring for Poly<R> {
    fn zero_like(&self) -> Self {
        Poly::zero(self.zero.clone())
    }
    fn one_like(&self) -> Self {
        Poly::constant(self.zero.one_like())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        Poly::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        Poly::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        Poly::mul(self, other)
    }
    fn neg(&self) -> Self {
        Poly::neg(self)
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        Poly::exact_div(self, other)
    }
}

impl<R: Ring> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("({c:?})*t^{k}"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Field-coefficient operations.
impl UniPoly {
    pub fn from_elements(coeffs: Vec<FieldElement>, ctx_zero: FieldElement) -> Self {
        Poly::new(coeffs, ctx_zero)
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn divrem(&self, b: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let inv = b.lc().inverse()?;
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return Ok((Poly::zero(self.zero.clone()), self.clone()));
        }
        let mut q = vec![self.zero.clone(); r.len() - db];
        for k in (0..q.len()).rev() {
            let c = &r[k + db] * &inv;
            if c.is_zero() {
                continue;
            }
            for (i, bi) in b.coeffs.iter().enumerate() {
                r[k + i] = &r[k + i] - &(&c * bi);
            }
            q[k] = c;
        }
        r.truncate(db);
        Ok((Poly::new(q, self.zero.clone()), Poly::new(r, self.zero.clone())))
    }

    pub fn rem(&self, b: &UniPoly) -> Result<UniPoly> {
        Ok(self.divrem(b)?.1)
    }

    /// Scales to leading coefficient 1 (the zero polynomial is returned as is).
    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().inverse().expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    /// Monic greatest common divisor; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors, monic.
    pub fn squarefree_part(&self) -> UniPoly {
        if self.is_constant() {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").monic()
    }

    /// Largest m with (t − t0)^m dividing `self`.
    pub fn vanishing_order(&self, t0: &FieldElement) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPoly);
        }
        let lin = Poly::linear_root(t0);
        let mut f = self.clone();
        let mut m = 0;
        while let Some(q) = f.exact_div(&lin) {
            f = q;
            m += 1;
        }
        Ok(m)
    }
}

/// Resultant by the subresultant algorithm (field of fractions not needed:
/// every division performed is exact in `R`).
pub fn resultant<R: Ring>(a: &Poly<R>, b: &Poly<R>) -> R {
    let zero = a.base_zero().clone();
    if a.is_zero() || b.is_zero() {
        return zero;
    }
    let one = zero.one_like();
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut s = one.clone();
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
        if a.degree().unwrap() % 2 == 1 && b.degree().unwrap() % 2 == 1 {
            s = s.neg();
        }
    }
    if b.degree() == Some(0) {
        return s.mul(&b.lc().pow(a.degree().unwrap()));
    }
    let mut g = one.clone();
    let mut h = one.clone();
    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = s.neg();
        }
        let r = a.prem(&b);
        if r.is_zero() {
            return zero;
        }
        a = b;
        let divisor = g.mul(&h.pow(delta));
        b = r
            .map(zero.clone(), |c| c.exact_div(&divisor).expect("subresultant division is exact"));
        g = a.lc();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta)
                .exact_div(&h.pow(delta - 1))
                .expect("subresultant division is exact")
        };
        if b.degree() == Some(0) {
            break;
        }
    }
    let da = a.degree().unwrap();
    // h^{1−deg a}·lc(b)^{deg a}
    let num = b.lc().pow(da);
    let h_part = if da == 0 {
        num.mul(&h)
    } else {
        num.exact_div(&h.pow(da - 1)).expect("subresultant division is exact")
    };
    s.mul(&h_part)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::FieldContext;
    use std::sync::Arc;

    fn poly(ctx: &Arc<FieldContext>, c: &[i64]) -> UniPoly {
        Poly::new(c.iter().map(|&x| ctx.from_int(x)).collect(), ctx.zero())
    }

    /// Sylvester-matrix determinant by Gaussian elimination.
    fn sylvester(a: &UniPoly, b: &UniPoly) -> FieldElement {
        let ctx = a.base_zero().ctx().clone();
        let m = a.degree().unwrap();
        let n = b.degree().unwrap();
        let size = m + n;
        if size == 0 {
            return ctx.one();
        }
        let mut mat = vec![vec![ctx.zero(); size]; size];
        for row in 0..n {
            for k in 0..=m {
                mat[row][row + k] = a.coeff(m - k);
            }
        }
        for row in 0..m {
            for k in 0..=n {
                mat[n + row][row + k] = b.coeff(n - k);
            }
        }
        let mut det = ctx.one();
        for col in 0..size {
            let Some(p) = (col..size).find(|&r| !mat[r][col].is_zero()) else {
                return ctx.zero();
            };
            if p != col {
                mat.swap(p, col);
                det = -det;
            }
            det = &det * &mat[col][col];
            let inv = mat[col][col].inverse().unwrap();
            for r in col + 1..size {
                let f = &mat[r][col] * &inv;
                if f.is_zero() {
                    continue;
                }
                for c in col..size {
                    let v = &mat[col][c] * &f;
                    mat[r][c] = &mat[r][c] - &v;
                }
            }
        }
        det
    }

    #[test]
    fn resultant_examples() {
        let ctx = FieldContext::cyclotomic(4).unwrap();
        let a = ctx.from_int(3);
        let b = ctx.zeta(4).unwrap();
        let r = resultant(&Poly::linear_root(&a), &Poly::linear_root(&b));
        assert_eq!(r, &a - &b);
        assert_eq!(resultant(&poly(&ctx, &[1, 0, 1]), &poly(&ctx, &[-1, 1])), ctx.from_int(2));
        let f = poly(&ctx, &[1, 2, 0, 5]);
        assert!(resultant(&f, &f).is_zero());
    }

    #[test]
    fn resultant_matches_sylvester() {
        use rand::{Rng, SeedableRng};
        let ctx = FieldContext::cyclotomic(3).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let da = rng.gen_range(1..6);
            let db = rng.gen_range(1..6);
            let mut gen = |d: usize| {
                let mut c: Vec<FieldElement> = (0..=d)
                    .map(|_| {
                        let u = ctx.from_int(rng.gen_range(-3..=3));
                        &u + &(&ctx.zeta(3).unwrap() * &ctx.from_int(rng.gen_range(-2..=2)))
                    })
                    .collect();
                if c[d].is_zero() {
                    c[d] = ctx.one();
                }
                Poly::new(c, ctx.zero())
            };
            let a = gen(da);
            let b = gen(db);
            assert_eq!(resultant(&a, &b), sylvester(&a, &b), "{a:?} / {b:?}");
        }
    }

    #[test]
    fn bivariate_resultant_eliminates() {
        // f = y^2 - x, g = y - x  → Res_y = x^2 - x
        let ctx = FieldContext::cyclotomic(1).unwrap();
        let x = Poly::monomial(ctx.one(), 1);
        let c = |v: i64| Poly::constant(ctx.from_int(v));
        let zero = Poly::zero(ctx.zero());
        let f = Poly::new(vec![x.neg(), zero.clone(), c(1)], zero.clone());
        let g = Poly::new(vec![x.neg(), c(1)], zero.clone());
        let r = resultant(&f, &g);
        assert_eq!(r, poly(&ctx, &[0, -1, 1]));
    }

    #[test]
    fn vanishing_orders() {
        let ctx = FieldContext::cyclotomic(1).unwrap();
        let f = poly(&ctx, &[0, 0, -1, 1]);
        assert_eq!(f.vanishing_order(&ctx.zero()).unwrap(), 2);
        assert_eq!(f.vanishing_order(&ctx.one()).unwrap(), 1);
        assert_eq!(f.vanishing_order(&ctx.from_int(2)).unwrap(), 0);
        assert!(matches!(
            Poly::zero(ctx.zero()).vanishing_order(&ctx.one()),
            Err(Error::ZeroPoly)
        ));
    }

    #[test]
    fn gcd_and_squarefree() {
        let ctx = FieldContext::cyclotomic(1).unwrap();
        let a = poly(&ctx, &[-1, 0, 1]); // (t-1)(t+1)
        let b = poly(&ctx, &[1, -2, 1]); // (t-1)^2
        assert_eq!(a.gcd(&b), poly(&ctx, &[-1, 1]));
        assert_eq!(b.squarefree_part(), poly(&ctx, &[-1, 1]));
        let p = a.mul(&b);
        let (q, r) = p.divrem(&b).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, a);
    }
}
