//! Error types shared across the crate.

use std::fmt;

/// Errors from exact polynomial and prime-field arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgebraError {
    /// A division that was expected to be exact left a nonzero remainder.
    NonExactDivision,
    /// Polynomial division requires a divisor with leading coefficient ±1.
    NonUnitDivisor,
    /// Division by zero (zero divisor polynomial, or inverse of 0 in F_p).
    DivisionByZero,
    /// The requested modulus is not a prime greater than 3.
    InvalidModulus(u64),
    /// Input polynomial degree exceeds the reversal window.
    DegreeTooLarge,
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::NonExactDivision => write!(f, "division is not exact"),
            AlgebraError::NonUnitDivisor => {
                write!(f, "divisor leading coefficient must be 1 or -1")
            }
            AlgebraError::DivisionByZero => write!(f, "division by zero"),
            AlgebraError::InvalidModulus(p) => {
                write!(f, "modulus {p} is not a prime greater than 3")
            }
            AlgebraError::DegreeTooLarge => write!(f, "polynomial degree exceeds the window"),
        }
    }
}

impl std::error::Error for AlgebraError {}

/// Errors from curve construction and point arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveError {
    /// Curve coefficients must be distinct and non-zero.
    InvalidParameters,
    /// The supplied coordinates do not satisfy the curve equation.
    PointNotOnCurve,
    /// An affine addition denominator vanished (possible only when d is a
    /// square in F_p).
    DenominatorZero,
    /// The field is too large for exhaustive enumeration.
    FieldTooLarge,
    /// A point order search exceeded the Hasse bound; the affine point set
    /// is not closed under the addition law.
    OrderSearchExceeded,
    Algebra(AlgebraError),
}

impl fmt::Display for CurveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveError::InvalidParameters => {
                write!(f, "a and d must be distinct and non-zero")
            }
            CurveError::PointNotOnCurve => write!(f, "point is not on the curve"),
            CurveError::DenominatorZero => write!(f, "addition law denominator is zero"),
            CurveError::FieldTooLarge => write!(f, "field too large for enumeration"),
            CurveError::OrderSearchExceeded => write!(f, "point order search exceeded bound"),
            CurveError::Algebra(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for CurveError {}

impl From<AlgebraError> for CurveError {
    fn from(e: AlgebraError) -> Self {
        CurveError::Algebra(e)
    }
}

/// Errors from evaluating rational functions and division polynomials at
/// points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalError {
    /// The function is not defined at the given point.
    UndefinedAtPoint,
    /// A denominator evaluated to zero.
    ZeroDenominator,
    /// A guarded denominator vanished outside the cases the theory allows;
    /// indicates an implementation or theory failure and must never occur.
    InternalInconsistency,
    Algebra(AlgebraError),
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::UndefinedAtPoint => write!(f, "function undefined at this point"),
            EvalError::ZeroDenominator => write!(f, "denominator is zero at this point"),
            EvalError::InternalInconsistency => {
                write!(f, "internal consistency failure: guarded denominator vanished")
            }
            EvalError::Algebra(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for EvalError {}

impl From<AlgebraError> for EvalError {
    fn from(e: AlgebraError) -> Self {
        EvalError::Algebra(e)
    }
}
