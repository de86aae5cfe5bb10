//! Division polynomials for twisted Edwards curves.
//!
//! A twisted Edwards curve `a x^2 + y^2 = 1 + d x^2 y^2` (a, d distinct and
//! nonzero, characteristic not 2 or 3) carries a family of polynomials in
//! Z[a,d][y] whose roots pick out exactly the n-torsion points, the way the
//! classical division polynomials do for short Weierstrass curves. This
//! crate constructs them exactly, exposes their structural invariants
//! (degree, leading and trailing terms, homogeneity, coefficient symmetry),
//! implements scalar multiplication and torsion tests through them, and
//! cross-checks everything against independent oracles: the chord-tangent
//! group law on the birationally equivalent Weierstrass curve, naive
//! repeated addition, and exhaustive point enumeration over small fields.
//!
//! Layering, bottom up:
//!
//! * [`algebra`] — exact integers, the coefficient ring Z[a,d], dense
//!   polynomials in y, prime fields.
//! * [`divpoly`] — the polynomial table and its structure checks.
//! * [`curve`] — twisted Edwards and short Weierstrass arithmetic plus the
//!   birational maps between them.
//! * [`weierstrass`] — numeric classical division polynomials (the oracle).
//! * [`funcfield`] — the canonical `p(y) + x q(y)` form of function-field
//!   elements and evaluation of the rational functions behind the
//!   multiplication formula.
//! * [`torsion`] — divpoly-based scalar multiplication, torsion scans, and
//!   the cross-validation harness.

pub mod algebra;
pub mod curve;
pub mod divpoly;
pub mod errors;
pub mod funcfield;
pub mod torsion;
pub mod weierstrass;

pub use algebra::{AdPoly, FieldElem, Poly, PrimeField};
pub use errors::{AlgebraError, CurveError, EvalError};

/// The coefficient ring Z[a, d].
pub type CoefPoly = algebra::AdPoly<num_bigint::BigInt>;
/// Polynomials in y over Z[a, d].
pub type YPoly = algebra::YPoly;
