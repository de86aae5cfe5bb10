//! Scalar bound for the polynomial containers.

use std::fmt::Debug;
use std::ops::{Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Commutative-ring element usable as a polynomial coefficient.
///
/// The polynomial types are generic over this trait so the same containers
/// work over `BigInt`, machine integers in tests, and nested polynomial
/// rings (`AdPoly` implements it too, which is what makes `Poly<AdPoly<_>>`
/// the ring Z[a,d][y]).
pub trait Scalar:
    Clone + PartialEq + Debug + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
    /// `self += a * b`, without forcing the caller to materialize `a * b`.
    ///
    /// Inner loops of polynomial multiplication go through this; ring types
    /// with allocation-heavy products override it.
    fn mul_add_assign(&mut self, a: &Self, b: &Self);
}

impl Scalar for BigInt {
    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
}

impl Scalar for i64 {
    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
}
