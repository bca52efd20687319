//! Univariate polynomials over a field or over K[x], and homogeneous
//! trivariate forms.

mod poly;
pub mod roots;
mod triform;

pub use poly::{resultant, Poly, Ring, UniPoly};
pub use triform::{det3, Exponent, Matrix3, TriForm};
