//! Exact scalar arithmetic, λ-polynomials, determinants and Stirling
//! transforms.

pub mod det;
pub mod factor;
pub mod poly;
pub mod scalar;
pub mod stirling;

pub use det::det_fraction_free;
pub use poly::{LambdaPoly, NumericPoly};
pub use scalar::AlgebraicScalar;
pub use stirling::{stirling_first_row, stirling_first_signed};
