//! Exact linear algebra and small-polytope geometry over any [`Scalar`].

mod affine;
mod matrix;
mod polytope;
mod rat;
mod scalar;

pub use affine::{affine_extend, barycentric};
pub use matrix::{dot, null_space, rank, solve_linear, Matrix};
pub use polytope::{affine_dimension, in_convex_hull, vertex_enumerate, Polytope};
pub use rat::{parse_rat, rat, rat_str};
pub use scalar::Scalar;
