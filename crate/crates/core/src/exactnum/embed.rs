use num_complex::Complex64;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{FieldContext, FieldElement, Rational};

/// A complex embedding of Q(ζ_N)(√w): ζ ↦ e^{2πij/N}, s ↦ sign·√(σ(w)).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Embedding {
    pub j: u32,
    pub sqrt_sign: f64,
}

impl FieldContext {
    /// One embedding from each complex-conjugate pair (both square-root
    /// signs when an adjunct is present). Together they determine an
    /// element's rational coordinates.
    pub fn embeddings(&self) -> Vec<Embedding> {
        let n = self.conductor();
        let mut js: Vec<u32> = (1..=n.max(1)).filter(|j| j.gcd(&n) == 1).collect();
        if n > 2 {
            js.retain(|&j| 2 * j < n);
        }
        let signs: &[f64] = if self.has_adjunct() { &[1.0, -1.0] } else { &[1.0] };
        js.iter()
            .flat_map(|&j| signs.iter().map(move |&s| Embedding { j, sqrt_sign: s }))
            .collect()
    }
}

fn rat_to_f64(q: &Rational) -> f64 {
    let n = q.numer().to_f64().unwrap_or(f64::NAN);
    let d = q.denom().to_f64().unwrap_or(f64::NAN);
    if n.is_finite() && d.is_finite() {
        n / d
    } else {
        // huge numerator or denominator: drop the same number of low bits from both
        let bits = q.numer().bits().max(q.denom().bits()) as i32 - 60;
        let shift = bits.max(0) as u32;
        let n = (q.numer() >> shift).to_f64().unwrap_or(0.0);
        let d = (q.denom() >> shift).to_f64().unwrap_or(1.0);
        n / d
    }
}

/// Value of ζ_N^k under embedding j.
pub fn zeta_value(n: u32, j: u32, k: usize) -> Complex64 {
    let angle = 2.0 * std::f64::consts::PI * ((j as u64 * k as u64) % n as u64) as f64 / n as f64;
    Complex64::from_polar(1.0, angle)
}

/// Complex values of the basis 1, ζ, …, ζ^{φ−1}, s, ζs, … under `e`.
pub fn basis_values(ctx: &std::sync::Arc<FieldContext>, e: Embedding) -> Vec<Complex64> {
    let n = ctx.conductor();
    let phi = ctx.phi();
    let mut out: Vec<Complex64> = (0..phi).map(|k| zeta_value(n, e.j, k)).collect();
    if let Some(w) = ctx.adjunct() {
        let wv: Complex64 = w
            .u_coeffs()
            .iter()
            .zip(&out)
            .map(|(c, b)| b * rat_to_f64(c))
            .sum();
        let s = wv.sqrt() * e.sqrt_sign;
        let base = out.clone();
        out.extend(base.iter().map(|b| b * s));
    }
    out
}

impl FieldElement {
    pub fn to_complex(&self, basis: &[Complex64]) -> Complex64 {
        self.coords()
            .iter()
            .zip(basis)
            .filter(|(c, _)| !num_traits::Zero::is_zero(*c))
            .map(|(c, b)| b * rat_to_f64(c))
            .sum()
    }
}
