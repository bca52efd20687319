//! Roots of a univariate polynomial that lie in its coefficient field.
//!
//! Candidates come from floating-point roots in every complex embedding;
//! a choice of one root per embedding determines rational coordinates,
//! which are rounded to nearby fractions and then checked exactly. Only
//! exactly verified roots are returned, so the result is always sound; the
//! `complete` flag says whether the roots found account for the full degree.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;

use super::poly::{Poly, UniPoly};
use crate::error::{Error, Result};
use crate::exactnum::{basis_values, FieldElement, Rational};

/// Upper bound on the number of root combinations tried per polynomial.
pub const COMBINATION_CAP: u64 = 40_000;

const MAX_DENOMINATOR: i64 = 100_000;

#[derive(Clone, Debug)]
pub struct RootSet {
    /// Distinct roots with multiplicity, sorted.
    pub roots: Vec<(FieldElement, usize)>,
    /// True when the multiplicities sum to the degree.
    pub complete: bool,
}

/// Roots of `f` in its coefficient field.
pub fn roots_in_field(f: &UniPoly) -> Result<RootSet> {
    let Some(deg) = f.degree() else {
        return Err(Error::ZeroPoly);
    };
    let mut found: Vec<FieldElement> = Vec::new();
    let mut rest = f.squarefree_part();
    let zero = f.base_zero().clone();

    // cheap exact candidates first
    for cand in [zero.clone(), zero.ctx().one(), -zero.ctx().one()] {
        if rest.degree().unwrap_or(0) >= 1 && rest.eval(&cand).is_zero() {
            rest = rest.exact_div(&Poly::linear_root(&cand)).expect("root divides");
            found.push(cand);
        }
    }

    while let Some(d) = rest.degree() {
        if d == 0 {
            break;
        }
        if d == 1 {
            let c = -&rest.coeff(0).div(&rest.coeff(1))?;
            found.push(c);
            break;
        }
        let Some(alpha) = numeric_search(&rest) else {
            break;
        };
        rest = rest.exact_div(&Poly::linear_root(&alpha)).expect("root divides");
        found.push(alpha);
    }

    let mut roots: Vec<(FieldElement, usize)> = found
        .into_iter()
        .map(|a| {
            let m = f.vanishing_order(&a).expect("nonzero polynomial");
            (a, m)
        })
        .collect();
    roots.sort();
    let total: usize = roots.iter().map(|(_, m)| m).sum();
    Ok(RootSet {
        complete: total == deg,
        roots,
    })
}

/// First verified root found among at most [`COMBINATION_CAP`] combinations.
fn numeric_search(f: &UniPoly) -> Option<FieldElement> {
    let ctx = f.base_zero().ctx().clone();
    let embeddings = ctx.embeddings();
    let bases: Vec<Vec<Complex64>> = embeddings.iter().map(|&e| basis_values(&ctx, e)).collect();
    let dim = ctx.dim();

    // Real least-squares system: for each embedding, real and imaginary rows.
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for b in &bases {
        rows.push(b.iter().map(|z| z.re).collect());
        rows.push(b.iter().map(|z| z.im).collect());
    }
    let pinv = pseudo_inverse(&rows, dim)?;

    let per_embedding: Vec<Vec<Complex64>> = bases
        .iter()
        .map(|b| {
            let c: Vec<Complex64> = f.coeffs().iter().map(|x| x.to_complex(b)).collect();
            aberth(&c)
        })
        .collect();
    let radices: Vec<usize> = per_embedding.iter().map(Vec::len).collect();
    let total: u64 = radices
        .iter()
        .try_fold(1u64, |acc, &r| acc.checked_mul(r as u64))
        .unwrap_or(u64::MAX);
    let limit = total.min(COMBINATION_CAP);

    let mut idx = vec![0usize; radices.len()];
    let mut rhs = vec![0.0f64; rows.len()];
    for _ in 0..limit {
        for (e, &i) in idx.iter().enumerate() {
            let z = per_embedding[e][i];
            rhs[2 * e] = z.re;
            rhs[2 * e + 1] = z.im;
        }
        let coords: Vec<f64> = pinv
            .iter()
            .map(|row| row.iter().zip(&rhs).map(|(a, b)| a * b).sum())
            .collect();
        if let Some(alpha) = recognize(&ctx, &coords) {
            if f.eval(&alpha).is_zero() {
                return Some(alpha);
            }
        }
        // advance the mixed-radix counter
        for e in 0..idx.len() {
            idx[e] += 1;
            if idx[e] < radices[e] {
                break;
            }
            idx[e] = 0;
        }
    }
    None
}

fn recognize(ctx: &std::sync::Arc<crate::exactnum::FieldContext>, coords: &[f64]) -> Option<FieldElement> {
    let mut rats = Vec::with_capacity(coords.len());
    for &x in coords {
        rats.push(approximate_rational(x)?);
    }
    let (u, v) = rats.split_at(ctx.phi());
    let mut alpha = ctx.from_zeta_poly(u);
    if let Some(s) = ctx.sqrt_adjunct() {
        alpha = &alpha + &(&ctx.from_zeta_poly(v) * &s);
    }
    Some(alpha)
}

/// Best rational approximation with bounded denominator, if close enough.
/// Every real has convergents within 1/q², so a match must beat that by a
/// wide margin to count.
fn approximate_rational(x: f64) -> Option<Rational> {
    if !x.is_finite() || x.abs() > 1e12 {
        return None;
    }
    let tol = 1e-9 * x.abs().max(1.0);
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
    let mut r = x;
    for _ in 0..40 {
        let a = r.floor();
        let ai = a as i64;
        let p2 = ai.checked_mul(p1)?.checked_add(p0)?;
        let q2 = ai.checked_mul(q1)?.checked_add(q0)?;
        if q2 > MAX_DENOMINATOR {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        if close(x, p1, q1, tol) {
            return Some(Rational::new(BigInt::from(p1), BigInt::from(q1)));
        }
        let frac = r - a;
        if frac.abs() < 1e-15 {
            break;
        }
        r = 1.0 / frac;
    }
    if q1 != 0 && close(x, p1, q1, tol) {
        Some(Rational::new(BigInt::from(p1), BigInt::from(q1)))
    } else {
        None
    }
}

fn close(x: f64, p: i64, q: i64, tol: f64) -> bool {
    let err = (x - p as f64 / q as f64).abs();
    let q = q as f64;
    err <= tol && err * q * q <= 1e-3
}

/// (AᵀA)⁻¹Aᵀ as a dim × rows matrix, or `None` if A lacks full column rank.
fn pseudo_inverse(a: &[Vec<f64>], dim: usize) -> Option<Vec<Vec<f64>>> {
    let m = a.len();
    let mut ata = vec![vec![0.0; dim]; dim];
    for row in a {
        for i in 0..dim {
            for j in 0..dim {
                ata[i][j] += row[i] * row[j];
            }
        }
    }
    // invert by Gauss–Jordan with partial pivoting
    let mut aug: Vec<Vec<f64>> = ata
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.clone();
            v.extend((0..dim).map(|j| if i == j { 1.0 } else { 0.0 }));
            v
        })
        .collect();
    for col in 0..dim {
        let piv = (col..dim).max_by(|&x, &y| aug[x][col].abs().total_cmp(&aug[y][col].abs()))?;
        if aug[piv][col].abs() < 1e-9 {
            return None;
        }
        aug.swap(piv, col);
        let p = aug[col][col];
        for v in aug[col].iter_mut() {
            *v /= p;
        }
        for r in 0..dim {
            if r != col {
                let f = aug[r][col];
                if f != 0.0 {
                    for c in 0..2 * dim {
                        aug[r][c] -= f * aug[col][c];
                    }
                }
            }
        }
    }
    let inv: Vec<Vec<f64>> = aug.into_iter().map(|r| r[dim..].to_vec()).collect();
    Some(
        (0..dim)
            .map(|i| {
                (0..m)
                    .map(|k| (0..dim).map(|j| inv[i][j] * a[k][j]).sum())
                    .collect()
            })
            .collect(),
    )
}

/// All complex roots of a polynomial (coefficients lowest first) by the
/// Aberth–Ehrlich iteration.
pub fn aberth(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut c = coeffs.to_vec();
    while c.last().is_some_and(|z| z.norm() == 0.0) {
        c.pop();
    }
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let lead = c[n];
    for z in c.iter_mut() {
        *z /= lead;
    }
    let radius = (0..n)
        .map(|i| c[i].norm().powf(1.0 / (n - i) as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    let eval = |x: Complex64| {
        let mut p = Complex64::zero();
        let mut dp = Complex64::zero();
        for coef in c.iter().rev() {
            dp = dp * x + p;
            p = p * x + coef;
        }
        (p, dp)
    };
    for _ in 0..800 {
        let mut max_step = 0.0f64;
        for k in 0..n {
            let (p, dp) = eval(z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| Complex64::new(1.0, 0.0) / (z[k] - z[j]))
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[k] -= w;
                max_step = max_step.max(w.norm() / z[k].norm().max(1.0));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    z
}
