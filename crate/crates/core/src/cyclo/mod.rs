//! Exact arithmetic in cyclotomic fields.

pub mod cyclotomic;
pub mod int;
pub mod poly;
pub mod scalar;
mod serial;

pub type Rational = num_rational::BigRational;

pub use cyclotomic::Cyclotomic;
pub use int::Int;
pub use poly::cyclotomic_polynomial;
pub use scalar::{Monomial, PhasedScalar};
