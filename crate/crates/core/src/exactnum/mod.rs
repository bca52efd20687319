//! Exact arithmetic in cyclotomic fields with an optional quadratic adjunct.

mod cyclotomic;
mod embed;
pub mod expr;
mod field;

pub use cyclotomic::{cyclotomic_polynomial, divisors, euler_phi, lcm};
pub use embed::{basis_values, Embedding};
pub use expr::{parse_element, parse_triple, render};
pub use field::{FieldContext, FieldElement};

/// Reduced fraction of arbitrary-precision integers.
pub type Rational = num_rational::BigRational;
