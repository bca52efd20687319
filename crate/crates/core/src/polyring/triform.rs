use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::poly::{Poly, UniPoly};
use crate::error::{Error, Result};
use crate::exactnum::{FieldContext, FieldElement};

/// Exponent triple (i, j, k) of X^i Y^j Z^k.
pub type Exponent = [u32; 3];

/// 3×3 matrix of field elements, row-major.
pub type Matrix3 = [[FieldElement; 3]; 3];

/// Homogeneous form in X, Y, Z with sparse nonzero coefficients.
#[derive(Clone)]
pub struct TriForm {
    ctx: Arc<FieldContext>,
    degree: u32,
    terms: BTreeMap<Exponent, FieldElement>,
}

impl PartialEq for TriForm {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && (self.degree == other.degree || self.terms.is_empty())
    }
}

impl Eq for TriForm {}

pub fn det3(m: &Matrix3) -> FieldElement {
    let minor = |a: &FieldElement, b: &FieldElement, c: &FieldElement, d: &FieldElement| &(a * d) - &(b * c);
    &(&(&m[0][0] * &minor(&m[1][1], &m[1][2], &m[2][1], &m[2][2]))
        - &(&m[0][1] * &minor(&m[1][0], &m[1][2], &m[2][0], &m[2][2])))
        + &(&m[0][2] * &minor(&m[1][0], &m[1][1], &m[2][0], &m[2][1]))
}

impl TriForm {
    pub fn zero(ctx: &Arc<FieldContext>, degree: u32) -> Self {
        TriForm {
            ctx: Arc::clone(ctx),
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Sums the given terms; every exponent must have total degree `degree`.
    pub fn from_terms(
        ctx: &Arc<FieldContext>,
        degree: u32,
        terms: impl IntoIterator<Item = (Exponent, FieldElement)>,
    ) -> Result<Self> {
        let mut f = TriForm::zero(ctx, degree);
        for (e, c) in terms {
            if e.iter().sum::<u32>() != degree {
                return Err(Error::BadParams(format!(
                    "exponent {e:?} does not have total degree {degree}"
                )));
            }
            f.add_term(e, c);
        }
        Ok(f)
    }

    /// Form from integer coefficients, convenient for fixed equations.
    pub fn from_int_terms(ctx: &Arc<FieldContext>, terms: &[(Exponent, i64)]) -> Self {
        let degree = terms.first().map_or(0, |(e, _)| e.iter().sum());
        TriForm::from_terms(ctx, degree, terms.iter().map(|&(e, c)| (e, ctx.from_int(c))))
            .expect("consistent degrees")
    }

    pub fn monomial(ctx: &Arc<FieldContext>, e: Exponent, c: FieldElement) -> Self {
        let mut f = TriForm::zero(ctx, e.iter().sum());
        f.add_term(e, c);
        f
    }

    /// The linear form aX + bY + cZ.
    pub fn linear(ctx: &Arc<FieldContext>, coeffs: &[FieldElement; 3]) -> Self {
        let mut f = TriForm::zero(ctx, 1);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = [0; 3];
            e[i] = 1;
            f.add_term(e, c.clone());
        }
        f
    }

    pub fn constant(ctx: &Arc<FieldContext>, c: FieldElement) -> Self {
        TriForm::monomial(ctx, [0, 0, 0], c)
    }

    fn add_term(&mut self, e: Exponent, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn ctx(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, FieldElement> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &Exponent) -> FieldElement {
        self.terms.get(e).cloned().unwrap_or_else(|| self.ctx.zero())
    }

    pub fn add(&self, other: &TriForm) -> TriForm {
        assert!(
            self.degree == other.degree || self.is_zero() || other.is_zero(),
            "adding forms of degrees {} and {}",
            self.degree,
            other.degree
        );
        let mut out = if self.is_zero() { other.clone() } else { self.clone() };
        let src = if self.is_zero() { &self.terms } else { &other.terms };
        for (e, c) in src {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> TriForm {
        self.scale(&-self.ctx.one())
    }

    pub fn sub(&self, other: &TriForm) -> TriForm {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &FieldElement) -> TriForm {
        let mut out = TriForm::zero(&self.ctx, self.degree);
        if c.is_zero() {
            return out;
        }
        for (e, x) in &self.terms {
            out.terms.insert(*e, x * c);
        }
        out
    }

    pub fn mul(&self, other: &TriForm) -> TriForm {
        let mut out = TriForm::zero(&self.ctx, self.degree + other.degree);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term([e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]], c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> TriForm {
        let mut acc = TriForm::constant(&self.ctx, self.ctx.one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Value at a coordinate triple.
    pub fn eval(&self, p: &[FieldElement; 3]) -> FieldElement {
        let d = self.degree as usize;
        let powers: Vec<Vec<FieldElement>> = p
            .iter()
            .map(|x| {
                let mut v = Vec::with_capacity(d + 1);
                v.push(self.ctx.one());
                for k in 1..=d {
                    let next = &v[k - 1] * x;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = self.ctx.zero();
        for (e, c) in &self.terms {
            let term = &(&(c * &powers[0][e[0] as usize]) * &powers[1][e[1] as usize])
                * &powers[2][e[2] as usize];
            acc = &acc + &term;
        }
        acc
    }

    /// ∂F/∂X_var (var = 0, 1, 2).
    pub fn partial(&self, var: usize) -> TriForm {
        let mut out = TriForm::zero(&self.ctx, self.degree.saturating_sub(1));
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut e2 = *e;
            e2[var] -= 1;
            out.add_term(e2, c.scale(&crate::exactnum::Rational::from_integer(e[var].into())));
        }
        out
    }

    pub fn gradient(&self) -> [TriForm; 3] {
        [self.partial(0), self.partial(1), self.partial(2)]
    }

    /// The pullback F(A·(X,Y,Z)ᵗ).
    pub fn substitute_linear(&self, a: &Matrix3) -> Result<TriForm> {
        if det3(a).is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(self.substitute_unchecked(a))
    }

    /// Pullback without the invertibility check (used for evaluating
    /// F along arbitrary linear maps).
    pub fn substitute_unchecked(&self, a: &Matrix3) -> TriForm {
        if let Some(perm) = monomial_pattern(a) {
            let mut out = TriForm::zero(&self.ctx, self.degree);
            for (e, c) in &self.terms {
                let mut e2 = [0u32; 3];
                let mut coeff = c.clone();
                for i in 0..3 {
                    e2[perm[i]] += e[i];
                    if e[i] > 0 {
                        coeff = &coeff * &a[i][perm[i]].pow(e[i] as u64);
                    }
                }
                out.add_term(e2, coeff);
            }
            return out;
        }
        let forms: Vec<TriForm> = (0..3)
            .map(|i| TriForm::linear(&self.ctx, &a[i]))
            .collect();
        let max_exp: Vec<u32> = (0..3)
            .map(|i| self.terms.keys().map(|e| e[i]).max().unwrap_or(0))
            .collect();
        let powers: Vec<Vec<TriForm>> = (0..3)
            .map(|i| {
                let mut v = vec![TriForm::constant(&self.ctx, self.ctx.one())];
                for k in 1..=max_exp[i] as usize {
                    let next = v[k - 1].mul(&forms[i]);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = TriForm::zero(&self.ctx, self.degree);
        let mut acc: BTreeMap<Exponent, FieldElement> = BTreeMap::new();
        for (e, c) in &self.terms {
            let prod = powers[0][e[0] as usize]
                .mul(&powers[1][e[1] as usize])
                .mul(&powers[2][e[2] as usize]);
            for (e2, c2) in prod.terms {
                let v = c * &c2;
                acc.entry(e2)
                    .and_modify(|x| *x = &*x + &v)
                    .or_insert(v);
            }
        }
        for (e, c) in acc {
            if !c.is_zero() {
                out.terms.insert(e, c);
            }
        }
        out
    }

    /// Decomposition F = Σ a_i(Y,Z)·X^i, keyed by i.
    pub fn x_slices(&self) -> BTreeMap<u32, TriForm> {
        let mut out: BTreeMap<u32, TriForm> = BTreeMap::new();
        for (e, c) in &self.terms {
            out.entry(e[0])
                .or_insert_with(|| TriForm::zero(&self.ctx, self.degree - e[0]))
                .terms
                .insert([0, e[1], e[2]], c.clone());
        }
        out
    }

    /// Largest power of X that occurs (0 for the zero form).
    pub fn deg_x(&self) -> u32 {
        self.terms.keys().map(|e| e[0]).max().unwrap_or(0)
    }

    /// Determinant of the matrix of second partials, degree 3(d − 2).
    pub fn hessian(&self) -> TriForm {
        let g = self.gradient();
        let h: Vec<Vec<TriForm>> = (0..3)
            .map(|i| (0..3).map(|j| g[i].partial(j)).collect())
            .collect();
        let m = |r: usize, c: usize| &h[r][c];
        let cof = |r1: usize, r2: usize, c1: usize, c2: usize| {
            m(r1, c1).mul(m(r2, c2)).sub(&m(r1, c2).mul(m(r2, c1)))
        };
        let t0 = m(0, 0).mul(&cof(1, 2, 1, 2));
        let t1 = m(0, 1).mul(&cof(1, 2, 0, 2));
        let t2 = m(0, 2).mul(&cof(1, 2, 0, 1));
        let mut out = t0.sub(&t1).add(&t2);
        out.degree = 3 * self.degree.saturating_sub(2);
        out
    }

    /// `Some(c)` when self = c·other with c ≠ 0.
    pub fn scalar_ratio(&self, other: &TriForm) -> Option<FieldElement> {
        if self.terms.len() != other.terms.len() || self.is_zero() {
            return None;
        }
        let (e0, c0) = other.terms.iter().next()?;
        let c = self.terms.get(e0)?.div(c0).ok()?;
        for (e, x) in &other.terms {
            if self.terms.get(e)? != &(x * &c) {
                return None;
            }
        }
        Some(c)
    }

    /// g(t) = F(p0 + t·p1), degree ≤ d.
    pub fn along_line(&self, p0: &[FieldElement; 3], p1: &[FieldElement; 3]) -> UniPoly {
        let zero = self.ctx.zero();
        let lines: Vec<UniPoly> = (0..3)
            .map(|i| Poly::new(vec![p0[i].clone(), p1[i].clone()], zero.clone()))
            .collect();
        let d = self.degree as usize;
        let powers: Vec<Vec<UniPoly>> = lines
            .iter()
            .map(|l| {
                let mut v = vec![Poly::constant(self.ctx.one())];
                for k in 1..=d {
                    let next = v[k - 1].mul(l);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = Poly::zero(zero);
        for (e, c) in &self.terms {
            let t = powers[0][e[0] as usize]
                .mul(&powers[1][e[1] as usize])
                .mul(&powers[2][e[2] as usize])
                .scale(c);
            acc = acc.add(&t);
        }
        acc
    }

    /// Same form, coefficients moved into another context.
    pub fn lift(&self, target: &Arc<FieldContext>) -> Result<TriForm> {
        let mut out = TriForm::zero(target, self.degree);
        for (e, c) in &self.terms {
            out.terms.insert(*e, c.lift(target)?);
        }
        Ok(out)
    }
}

/// For a matrix with exactly one nonzero entry per row and column, the
/// column index of each row's entry.
fn monomial_pattern(a: &Matrix3) -> Option<[usize; 3]> {
    let mut perm = [0usize; 3];
    let mut used = [false; 3];
    for i in 0..3 {
        let nz: Vec<usize> = (0..3).filter(|&j| !a[i][j].is_zero()).collect();
        if nz.len() != 1 || used[nz[0]] {
            return None;
        }
        used[nz[0]] = true;
        perm[i] = nz[0];
    }
    Some(perm)
}

fn coeff_text(c: &FieldElement) -> String {
    let s = c.to_string();
    if s[1..].contains(['+', '-']) {
        format!("({s})")
    } else {
        s
    }
}

impl fmt::Display for TriForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mut vars = Vec::new();
            for (i, name) in ["X", "Y", "Z"].iter().enumerate() {
                match e[i] {
                    0 => {}
                    1 => vars.push(name.to_string()),
                    k => vars.push(format!("{name}^{k}")),
                }
            }
            let mono = vars.join("*");
            let cs = coeff_text(c);
            let text = if mono.is_empty() {
                cs
            } else if cs == "1" {
                mono
            } else if cs == "-1" {
                format!("-{mono}")
            } else {
                format!("{cs}*{mono}")
            };
            match (first, text.strip_prefix('-')) {
                (true, _) => f.write_str(&text)?,
                (false, Some(rest)) => write!(f, " - {rest}")?,
                (false, None) => write!(f, " + {text}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for TriForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
