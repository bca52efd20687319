use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::cyclotomic::{cyclotomic_integer, lcm};
use super::{expr, Rational};
use crate::error::{Error, Result};

/// The field Q(ζ_N), optionally extended by a formal square root s of some
/// nonzero w ∈ Q(ζ_N).
///
/// Contexts are shared behind `Arc`; two contexts are interchangeable when
/// they have the same conductor and the same adjunct.
pub struct FieldContext {
    conductor: u32,
    phi: usize,
    modulus: Vec<BigInt>,
    /// x^φ expressed in the basis: pairs (j, c) with x^φ = Σ c·x^j.
    top_power: Vec<(usize, BigInt)>,
    adjunct: Option<Adjunct>,
}

#[derive(Clone, PartialEq, Eq)]
struct Adjunct {
    num: Vec<BigInt>,
    den: BigInt,
}

impl FieldContext {
    /// Q(ζ_N) without adjunct.
    pub fn cyclotomic(conductor: u32) -> Result<Arc<Self>> {
        if conductor == 0 {
            return Err(Error::BadParams("conductor must be positive".into()));
        }
        let modulus = cyclotomic_integer(conductor);
        let phi = modulus.len() - 1;
        let top_power = modulus[..phi]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (j, -c))
            .collect();
        Ok(Arc::new(FieldContext {
            conductor,
            phi,
            modulus,
            top_power,
            adjunct: None,
        }))
    }

    /// Q(ζ_N)(√w). `w` must live in Q(ζ_N) (its own adjunct part, if any, must be zero).
    pub fn with_adjunct(conductor: u32, w: &FieldElement) -> Result<Arc<Self>> {
        let base = Self::cyclotomic(conductor)?;
        if w.ctx.conductor != conductor || !w.v_is_zero() {
            return Err(Error::ContextMismatch(
                "adjunct must be an element of the base cyclotomic field".into(),
            ));
        }
        if w.is_zero() {
            return Err(Error::ZeroAdjunct);
        }
        let phi = base.phi;
        Ok(Arc::new(FieldContext {
            conductor,
            phi,
            modulus: base.modulus.clone(),
            top_power: base.top_power.clone(),
            adjunct: Some(Adjunct {
                num: w.num[..phi].to_vec(),
                den: w.den.clone(),
            }),
        }))
    }

    /// Builds a context from a conductor and an optional adjunct expression
    /// (parsed in Q(ζ_N), so it may use `z` but not `s`).
    pub fn make(conductor: u32, adjunct: Option<&str>) -> Result<Arc<Self>> {
        let base = Self::cyclotomic(conductor)?;
        match adjunct {
            None => Ok(base),
            Some(text) => {
                let w = expr::parse_element(&base, text)?;
                Self::with_adjunct(conductor, &w)
            }
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Degree φ(N) of the cyclotomic part.
    pub fn phi(&self) -> usize {
        self.phi
    }

    pub fn has_adjunct(&self) -> bool {
        self.adjunct.is_some()
    }

    /// Number of rational coordinates of an element (φ or 2φ).
    pub fn dim(&self) -> usize {
        if self.has_adjunct() {
            2 * self.phi
        } else {
            self.phi
        }
    }

    /// Φ_N with rational coefficients, lowest degree first.
    pub fn modulus(&self) -> Vec<Rational> {
        self.modulus
            .iter()
            .cloned()
            .map(Rational::from_integer)
            .collect()
    }

    /// True when the two contexts describe the same field presentation.
    pub fn same_as(&self, other: &FieldContext) -> bool {
        std::ptr::eq(self, other)
            || (self.conductor == other.conductor && self.adjunct == other.adjunct)
    }

    /// The adjunct w as an element of this context, if present.
    pub fn adjunct(self: &Arc<Self>) -> Option<FieldElement> {
        self.adjunct.as_ref().map(|a| {
            let mut num = a.num.clone();
            num.resize(self.dim(), BigInt::zero());
            FieldElement::from_raw(self, num, a.den.clone())
        })
    }

    /// The formal square root s = √w, if present.
    pub fn sqrt_adjunct(self: &Arc<Self>) -> Option<FieldElement> {
        self.adjunct.as_ref().map(|_| {
            let mut num = vec![BigInt::zero(); self.dim()];
            num[self.phi] = BigInt::one();
            FieldElement::from_raw(self, num, BigInt::one())
        })
    }

    pub fn zero(self: &Arc<Self>) -> FieldElement {
        FieldElement::from_raw(self, vec![BigInt::zero(); self.dim()], BigInt::one())
    }

    pub fn one(self: &Arc<Self>) -> FieldElement {
        self.from_int(1)
    }

    pub fn from_int(self: &Arc<Self>, n: i64) -> FieldElement {
        self.from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(self: &Arc<Self>, q: &Rational) -> FieldElement {
        let mut num = vec![BigInt::zero(); self.dim()];
        num[0] = q.numer().clone();
        FieldElement::from_raw(self, num, q.denom().clone())
    }

    pub fn from_ratio(self: &Arc<Self>, n: i64, d: i64) -> FieldElement {
        self.from_rational(&Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// The element Σ c_k ζ_N^k for rational coefficients of any length.
    pub fn from_zeta_poly(self: &Arc<Self>, coeffs: &[Rational]) -> FieldElement {
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut poly: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        self.reduce_in_place(&mut poly);
        poly.resize(self.dim(), BigInt::zero());
        FieldElement::from_raw(self, poly, den)
    }

    /// ζ_N^k for any integer k.
    pub fn zeta_power(self: &Arc<Self>, k: i64) -> FieldElement {
        let e = k.rem_euclid(self.conductor as i64) as usize;
        let mut poly = vec![BigInt::zero(); e + 1];
        poly[e] = BigInt::one();
        self.reduce_in_place(&mut poly);
        poly.resize(self.dim(), BigInt::zero());
        FieldElement::from_raw(self, poly, BigInt::one())
    }

    /// Whether a primitive n-th root of unity lies in Q(ζ_N).
    pub fn contains_roots_of_unity(&self, n: u32) -> bool {
        n >= 1 && (self.conductor % n == 0 || (self.conductor % 2 == 1 && (2 * self.conductor) % n == 0))
    }

    /// A fixed primitive n-th root of unity: ζ_N^{N/n} when n | N.
    ///
    /// For odd N, Q(ζ_N) = Q(ζ_2N) and n | 2N is accepted as well, using
    /// −ζ_N^{(N+1)/2} as the primitive 2N-th root.
    pub fn zeta(self: &Arc<Self>, n: u32) -> Result<FieldElement> {
        let big_n = self.conductor;
        if n >= 1 && big_n % n == 0 {
            return Ok(self.zeta_power((big_n / n) as i64));
        }
        if n >= 1 && big_n % 2 == 1 && (2 * big_n) % n == 0 {
            let root = -self.zeta_power(((big_n + 1) / 2) as i64);
            return Ok(root.pow((2 * big_n / n) as u64));
        }
        Err(Error::RootsMissing {
            n,
            conductor: big_n,
            minimal_conductor: lcm(big_n, n.max(1)),
        })
    }

    /// Reduces a coefficient vector modulo Φ_N; the result has length ≤ φ.
    fn reduce_in_place(&self, poly: &mut Vec<BigInt>) {
        let phi = self.phi;
        if poly.len() > phi {
            for i in (phi..poly.len()).rev() {
                if poly[i].is_zero() {
                    continue;
                }
                let c = std::mem::take(&mut poly[i]);
                let shift = i - phi;
                for (j, m) in &self.top_power {
                    poly[shift + j] += &c * m;
                }
            }
            poly.truncate(phi);
        }
    }

    /// Product of two base-field numerators, reduced.
    fn mul_base(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let phi = self.phi;
        let mut out = vec![BigInt::zero(); 2 * phi - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        self.reduce_in_place(&mut out);
        out.resize(phi, BigInt::zero());
        out
    }
}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.conductor)?;
        if let Some(a) = &self.adjunct {
            let base = FieldContext::cyclotomic(self.conductor).map_err(|_| fmt::Error)?;
            let w = FieldElement::from_raw(&base, a.num.clone(), a.den.clone());
            write!(f, "(sqrt({w}))")?;
        }
        Ok(())
    }
}

/// Exact element of a [`FieldContext`]: integer numerators over one positive
/// common denominator, kept in lowest terms so equality is structural.
#[derive(Clone)]
pub struct FieldElement {
    ctx: Arc<FieldContext>,
    num: Vec<BigInt>,
    den: BigInt,
}

fn all_zero(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

impl FieldElement {
    fn from_raw(ctx: &Arc<FieldContext>, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut e = FieldElement {
            ctx: Arc::clone(ctx),
            num,
            den,
        };
        e.normalize();
        e
    }

    fn normalize(&mut self) {
        debug_assert!(!self.den.is_zero());
        if all_zero(&self.num) {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in &mut self.num {
                *c = -&*c;
            }
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if !c.is_zero() {
                g = g.gcd(c);
                if g.is_one() {
                    return;
                }
            }
        }
        self.den /= &g;
        for c in &mut self.num {
            *c /= &g;
        }
    }

    fn check_ctx(&self, other: &FieldElement) {
        assert!(
            Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx.same_as(&other.ctx),
            "mixing elements of {:?} and {:?}",
            self.ctx,
            other.ctx
        );
    }

    pub fn ctx(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        all_zero(&self.num)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && all_zero(&self.num[1..])
    }

    fn v_is_zero(&self) -> bool {
        all_zero(&self.num[self.ctx.phi..])
    }

    fn coeff_at(&self, i: usize) -> Rational {
        Rational::new(self.num[i].clone(), self.den.clone())
    }

    /// Rational coordinates of the Q(ζ_N)-part in the basis 1, ζ, …, ζ^{φ−1}.
    pub fn u_coeffs(&self) -> Vec<Rational> {
        (0..self.ctx.phi).map(|i| self.coeff_at(i)).collect()
    }

    /// Rational coordinates of the √w-part (empty without adjunct).
    pub fn v_coeffs(&self) -> Vec<Rational> {
        (self.ctx.phi..self.num.len())
            .map(|i| self.coeff_at(i))
            .collect()
    }

    /// All rational coordinates, u-part first.
    pub fn coords(&self) -> Vec<Rational> {
        (0..self.num.len()).map(|i| self.coeff_at(i)).collect()
    }

    /// The value as a rational number, if it is one.
    pub fn to_rational(&self) -> Option<Rational> {
        if all_zero(&self.num[1..]) {
            Some(self.coeff_at(0))
        } else {
            None
        }
    }

    /// Element with the same u- and v-parts in another context.
    ///
    /// Allowed when the conductors agree and either the target carries the
    /// same adjunct or this element has no adjunct part.
    pub fn lift(&self, target: &Arc<FieldContext>) -> Result<FieldElement> {
        if target.conductor != self.ctx.conductor {
            return Err(Error::ContextMismatch(format!(
                "cannot move an element of {:?} into {:?}",
                self.ctx, target
            )));
        }
        if !self.v_is_zero() && !self.ctx.same_as(target) {
            return Err(Error::ContextMismatch(
                "element uses an adjunct the target does not have".into(),
            ));
        }
        let mut num = self.num[..self.ctx.phi].to_vec();
        if target.has_adjunct() {
            if self.ctx.has_adjunct() {
                num.extend_from_slice(&self.num[self.ctx.phi..]);
            } else {
                num.resize(target.dim(), BigInt::zero());
            }
        }
        Ok(FieldElement::from_raw(target, num, self.den.clone()))
    }

    /// u − v·s: the conjugate over Q(ζ_N).
    pub fn adjunct_conjugate(&self) -> FieldElement {
        let phi = self.ctx.phi;
        let mut num = self.num.clone();
        for c in &mut num[phi..] {
            *c = -&*c;
        }
        FieldElement {
            ctx: Arc::clone(&self.ctx),
            num,
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, q: &Rational) -> FieldElement {
        let num = self.num.iter().map(|c| c * q.numer()).collect();
        FieldElement::from_raw(&self.ctx, num, &self.den * q.denom())
    }

    pub fn pow(&self, mut e: u64) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.ctx.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power; negative exponents invert first.
    pub fn powi(&self, e: i64) -> Result<FieldElement> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inverse()?.pow(e.unsigned_abs()))
        }
    }

    pub fn inverse(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let ctx = &self.ctx;
        if self.v_is_zero() {
            let inv = invert_base(ctx, &self.num[..ctx.phi], &self.den);
            let mut num = inv.0;
            num.resize(ctx.dim(), BigInt::zero());
            return Ok(FieldElement::from_raw(ctx, num, inv.1));
        }
        // (u + v s)^{-1} = (u − v s) / (u² − v² w)
        let conj = self.adjunct_conjugate();
        let norm = self * &conj;
        if norm.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        debug_assert!(norm.v_is_zero());
        Ok(&conj * &norm.inverse()?)
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_ctx(other);
        Ok(self * &other.inverse()?)
    }

    fn add_impl(&self, other: &FieldElement, negate: bool) -> FieldElement {
        self.check_ctx(other);
        let sign = |c: &BigInt| if negate { -c } else { c.clone() };
        if self.den == other.den {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| a + sign(b))
                .collect();
            return FieldElement::from_raw(&self.ctx, num, self.den.clone());
        }
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| a * &other.den + sign(b) * &self.den)
            .collect();
        FieldElement::from_raw(&self.ctx, num, &self.den * &other.den)
    }

    fn mul_impl(&self, other: &FieldElement) -> FieldElement {
        self.check_ctx(other);
        let ctx = &self.ctx;
        let phi = ctx.phi;
        if self.is_zero() || other.is_zero() {
            return ctx.zero();
        }
        let den = &self.den * &other.den;
        let Some(adj) = &ctx.adjunct else {
            let num = ctx.mul_base(&self.num, &other.num);
            return FieldElement::from_raw(ctx, num, den);
        };
        let (au, av) = self.num.split_at(phi);
        let (bu, bv) = other.num.split_at(phi);
        let a_v = !all_zero(av);
        let b_v = !all_zero(bv);
        let mut num = ctx.mul_base(au, bu);
        match (a_v, b_v) {
            (false, false) => {
                num.resize(2 * phi, BigInt::zero());
                FieldElement::from_raw(ctx, num, den)
            }
            (true, false) => {
                num.extend(ctx.mul_base(av, bu));
                FieldElement::from_raw(ctx, num, den)
            }
            (false, true) => {
                num.extend(ctx.mul_base(au, bv));
                FieldElement::from_raw(ctx, num, den)
            }
            (true, true) => {
                let vv = ctx.mul_base(&ctx.mul_base(av, bv), &adj.num);
                for (x, y) in num.iter_mut().zip(&vv) {
                    *x = &*x * &adj.den + y;
                }
                let mut v = ctx.mul_base(au, bv);
                for (x, y) in v.iter_mut().zip(ctx.mul_base(av, bu)) {
                    *x = (&*x + y) * &adj.den;
                }
                num.extend(v);
                FieldElement::from_raw(ctx, num, den * &adj.den)
            }
        }
    }
}

/// Inverse of (num / den) in Q(ζ_N) by the extended Euclidean algorithm
/// over Q against Φ_N. Returns integer numerators and a denominator.
fn invert_base(ctx: &FieldContext, num: &[BigInt], den: &BigInt) -> (Vec<BigInt>, BigInt) {
    type RPoly = Vec<Rational>;
    fn trim(p: &mut RPoly) {
        while p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
    }
    fn divrem(a: &RPoly, b: &RPoly) -> (RPoly, RPoly) {
        let mut r = a.clone();
        let db = b.len() - 1;
        if r.len() < b.len() {
            return (vec![], r);
        }
        let mut q = vec![Rational::zero(); r.len() - db];
        let lc = b[db].clone();
        for k in (0..q.len()).rev() {
            let c = &r[k + db] / &lc;
            if c.is_zero() {
                continue;
            }
            for (i, bi) in b.iter().enumerate() {
                r[k + i] -= &c * bi;
            }
            q[k] = c;
        }
        trim(&mut r);
        trim(&mut q);
        (q, r)
    }
    fn sub_mul(a: &RPoly, q: &RPoly, b: &RPoly) -> RPoly {
        let mut out = a.clone();
        let need = q.len() + b.len();
        if out.len() < need {
            out.resize(need, Rational::zero());
        }
        for (i, x) in q.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] -= x * y;
            }
        }
        trim(&mut out);
        out
    }

    let mut r0: RPoly = ctx.modulus.iter().cloned().map(Rational::from_integer).collect();
    let mut r1: RPoly = num.iter().cloned().map(Rational::from_integer).collect();
    trim(&mut r1);
    let mut s0: RPoly = vec![];
    let mut s1: RPoly = vec![Rational::one()];
    while r1.len() > 1 {
        let (q, r2) = divrem(&r0, &r1);
        let s2 = sub_mul(&s0, &q, &s1);
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    // r1 is a nonzero constant c with s1·num ≡ c, so num^{-1} = s1 / c.
    let c = r1[0].clone();
    let scale = Rational::from_integer(den.clone()) / c;
    let coeffs: Vec<Rational> = s1.iter().map(|x| x * &scale).collect();
    let common = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut out: Vec<BigInt> = coeffs
        .iter()
        .map(|c| c.numer() * (&common / c.denom()))
        .collect();
    out.resize(ctx.phi, BigInt::zero());
    (out, common)
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.den == other.den && self.num == other.num
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl Ord for FieldElement {
    /// Lexicographic on the rational coordinates (u-part, then v-part).
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.num.iter().zip(&other.num) {
            let ord = (a * &other.den).cmp(&(b * &self.den));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        self.num.len().cmp(&other.num.len())
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&expr::render(self))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            ctx: Arc::clone(&self.ctx),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                let f: fn(&FieldElement, &FieldElement) -> FieldElement = $body;
                f(self, rhs)
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
        impl $tr<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_impl(b, false));
forward_binop!(Sub, sub, |a, b| a.add_impl(b, true));
forward_binop!(Mul, mul, |a, b| a.mul_impl(b));
