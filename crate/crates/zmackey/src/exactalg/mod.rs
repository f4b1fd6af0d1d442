//! Exact integer linear algebra and divisor arithmetic.

mod divisors;
mod group;
mod int;
mod matrix;
mod snf;

pub use divisors::*;
pub use group::*;
pub use int::Int;
pub use matrix::IntMatrix;
pub use snf::{determinant_divisors, reduce, smith_normal_form, Reduction, SmithForm, Track};
