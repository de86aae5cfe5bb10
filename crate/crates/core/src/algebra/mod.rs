//! Exact arithmetic: arbitrary-precision integers, the coefficient ring
//! Z[a,d], dense univariate polynomials over it, and prime fields.

pub mod coef;
pub mod field;
pub mod poly;
pub mod scalar;

pub use coef::AdPoly;
pub use field::{is_prime_u64, FieldElem, PrimeField};
pub use poly::{Poly, YPoly};
pub use scalar::Scalar;
