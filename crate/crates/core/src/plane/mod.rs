//! Projective points, lines and transforms, plus local geometry of a curve
//! at a point.

mod local;
mod point;
mod transform;
mod zeros;

pub use local::{
    flex_contribution, intersection_multiplicity, on_curve, projection_degree, ramification_index,
    restrict_to_line, tangent_line,
};
pub use point::{cross, dot, line_through, meet, ProjLine, ProjPoint};
pub use transform::{
    adjugate, identity, mat_inverse, mat_mul, mat_scale, mat_sub, mat_vec, transpose, ProjTransform,
};
pub use zeros::{common_zeros, curve_line_points, field_flexes, is_smooth, PointSet, Smoothness};
