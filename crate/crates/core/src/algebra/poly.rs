//! Dense univariate polynomials over a scalar ring.
//!
//! Coefficients are stored in ascending degree order; the vector is empty
//! for the zero polynomial and its last entry is nonzero otherwise, so the
//! degree of zero is the distinguished `None`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::coef::{monomial_factors, sorted_for_display, write_term, AdPoly};
use super::field::FieldElem;
use super::scalar::Scalar;
use crate::errors::AlgebraError;

/// A polynomial in one variable (y throughout this crate).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

impl<C: Scalar> Poly<C> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// Builds from ascending-degree coefficients, trimming trailing zeros.
    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        let mut p = Poly { coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` standing for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of y^k (zero when k exceeds the degree).
    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    /// The nonzero term of least degree, as `(degree, coefficient)`.
    pub fn trailing(&self) -> Option<(usize, &C)> {
        self.coeffs.iter().enumerate().find(|(_, c)| !c.is_zero())
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for v in &self.coeffs {
            let mut t = C::zero();
            t.mul_add_assign(v, c);
            out.push(t);
        }
        Self::from_coeffs(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Quotient of an exact division.
    ///
    /// The divisor must be nonzero with leading coefficient 1 or -1 (every
    /// divisor used by the recursion is a power of y+1). A nonzero remainder
    /// reports `NonExactDivision`: divisibility here is a theorem, so this
    /// error doubles as a built-in integrality check.
    pub fn exact_div(&self, den: &Poly<C>) -> Result<Poly<C>, AlgebraError> {
        let dd = match den.degree() {
            None => return Err(AlgebraError::DivisionByZero),
            Some(d) => d,
        };
        let lc = den.leading().expect("nonzero divisor");
        let neg_unit = lc.clone() == -C::one();
        if !lc.is_one() && !neg_unit {
            return Err(AlgebraError::NonUnitDivisor);
        }
        let nd = match self.degree() {
            None => return Ok(Poly::zero()),
            Some(n) => n,
        };
        if nd < dd {
            return Err(AlgebraError::NonExactDivision);
        }
        let mut rem = self.coeffs.clone();
        let mut q = vec![C::zero(); nd - dd + 1];
        for t in (0..=nd - dd).rev() {
            let lead = rem[t + dd].clone();
            if lead.is_zero() {
                continue;
            }
            let qc = if neg_unit { -lead } else { lead };
            let minus_qc = -qc.clone();
            for (i, dc) in den.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    rem[t + i].mul_add_assign(&minus_qc, dc);
                }
            }
            q[t] = qc;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(AlgebraError::NonExactDivision);
        }
        Ok(Poly::from_coeffs(q))
    }

    /// Maps coefficients into another scalar ring.
    pub fn map<T: Scalar>(&self, f: impl Fn(&C) -> T) -> Poly<T> {
        Poly::from_coeffs(self.coeffs.iter().map(f).collect())
    }
}

impl<C: Scalar> Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                (Some(x), Some(y)) => x.clone() + y.clone(),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => y.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::from_coeffs(out)
    }
}

impl<C: Scalar> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                (Some(x), Some(y)) => x.clone() - y.clone(),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => -y.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::from_coeffs(out)
    }
}

impl<C: Scalar> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut acc = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, ci) in self.coeffs.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for (j, cj) in rhs.coeffs.iter().enumerate() {
                if !cj.is_zero() {
                    acc[i + j].mul_add_assign(ci, cj);
                }
            }
        }
        Poly::from_coeffs(acc)
    }
}

impl<C: Scalar> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

impl<C: Scalar> Add for Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: Poly<C>) -> Poly<C> {
        &self + &rhs
    }
}

impl<C: Scalar> Sub for Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: Poly<C>) -> Poly<C> {
        &self - &rhs
    }
}

impl<C: Scalar> Mul for Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: Poly<C>) -> Poly<C> {
        &self * &rhs
    }
}

impl<C: Scalar> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        -&self
    }
}

/// Polynomials in Z[a,d][y]; the ring the division polynomials live in.
pub type YPoly = Poly<AdPoly<BigInt>>;

impl YPoly {
    /// Evaluates at field values for a, d and y (Horner in y).
    pub fn eval(&self, a: FieldElem, d: FieldElem, y: FieldElem) -> FieldElem {
        let field = a.field();
        let mut acc = field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * y + c.eval(a, d);
        }
        acc
    }

    /// Substitutes an integer for y, staying in Z[a, d].
    pub fn eval_y_int(&self, y: i64) -> AdPoly<BigInt> {
        let yc = AdPoly::constant(BigInt::from(y));
        let mut acc = AdPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &yc) + c;
        }
        acc
    }

    /// Reduces every coefficient mod p, dropping vanished terms; the degree
    /// can drop when p divides the top coefficients.
    pub fn reduce_mod(&self, p: u64) -> YPoly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| c.reduce_mod(p)).collect())
    }

    /// Gcd of all integer coefficients across all terms.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(&c.content());
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides every integer coefficient by `g` exactly.
    pub fn div_int(&self, g: &BigInt) -> YPoly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| c.div_int(g)).collect())
    }
}

/// Canonical text rendering: monomials in descending y-degree, ties within a
/// y-coefficient by descending total (a,d)-degree with a before d, explicit
/// signs. Example: `-d*y^4 - 2*d*y^3 + 2*a*y + a`.
impl<C: Scalar + Signed + fmt::Display> fmt::Display for Poly<AdPoly<C>> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (ydeg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            for ((i, j), v) in sorted_for_display(c) {
                write_term(f, first, v, &monomial_factors(i, j, ydeg as u32))?;
                first = false;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    /// y + 1
    fn y_plus_one() -> YPoly {
        Poly::from_coeffs(vec![AdPoly::one(), AdPoly::one()])
    }

    /// -d y^4 - 2d y^3 + 2a y + a
    fn sample_quartic() -> YPoly {
        Poly::from_coeffs(vec![
            AdPoly::term(bi(1), 1, 0),
            AdPoly::term(bi(2), 1, 0),
            AdPoly::zero(),
            AdPoly::term(bi(-2), 0, 1),
            AdPoly::term(bi(-1), 0, 1),
        ])
    }

    #[test]
    fn square_of_y_plus_one() {
        let sq = &y_plus_one() * &y_plus_one();
        let want = Poly::from_coeffs(vec![
            AdPoly::one(),
            AdPoly::constant(bi(2)),
            AdPoly::one(),
        ]);
        assert_eq!(sq, want);
        assert_eq!(sq.exact_div(&y_plus_one()).unwrap(), y_plus_one());
    }

    #[test]
    fn subtraction_to_zero_has_minus_infinity_degree() {
        let q = sample_quartic();
        let z = &q - &q;
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
    }

    #[test]
    fn non_exact_division_detected() {
        assert_eq!(
            sample_quartic().exact_div(&y_plus_one()),
            Err(AlgebraError::NonExactDivision)
        );
    }

    #[test]
    fn division_by_zero_and_non_unit() {
        let q = sample_quartic();
        assert_eq!(q.exact_div(&Poly::zero()), Err(AlgebraError::DivisionByZero));
        let two_y = Poly::from_coeffs(vec![AdPoly::zero(), AdPoly::constant(bi(2))]);
        assert_eq!(q.exact_div(&two_y), Err(AlgebraError::NonUnitDivisor));
    }

    #[test]
    fn division_by_negated_unit() {
        let q = sample_quartic();
        let neg = -&y_plus_one();
        let prod = &q * &neg;
        assert_eq!(prod.exact_div(&neg).unwrap(), q);
    }

    #[test]
    fn eval_small_cases() {
        use crate::algebra::field::PrimeField;
        let f7 = PrimeField::new(7).unwrap();
        // y + 1 at y=3 over F_7
        let v = y_plus_one().eval(f7.elem(1), f7.elem(1), f7.elem(3));
        assert_eq!(v, f7.elem(4));
        // constant 1 evaluates to 1 anywhere
        let one = YPoly::one();
        assert_eq!(one.eval(f7.elem(5), f7.elem(2), f7.elem(6)), f7.elem(1));
        // the quartic at (a=1, d=2, y=1) over F_13: -2 - 4 + 2 + 1 = -3 = 10
        let f13 = PrimeField::new(13).unwrap();
        let v = sample_quartic().eval(f13.elem(1), f13.elem(2), f13.elem(1));
        assert_eq!(v, f13.elem(10));
    }

    #[test]
    fn eval_y_int_at_minus_one() {
        // the quartic at y=-1 is d - a, not zero
        let v = sample_quartic().eval_y_int(-1);
        let want = AdPoly::from_terms([(bi(-1), 1, 0), (bi(1), 0, 1)]);
        assert_eq!(v, want);
        assert!((&y_plus_one() * &sample_quartic()).eval_y_int(-1).is_zero());
    }

    #[test]
    fn canonical_rendering() {
        assert_eq!(sample_quartic().to_string(), "-d*y^4 - 2*d*y^3 + 2*a*y + a");
        assert_eq!(y_plus_one().to_string(), "y + 1");
        assert_eq!(YPoly::zero().to_string(), "0");
        assert_eq!(YPoly::one().to_string(), "1");
    }

    #[test]
    fn reduce_mod_drops_degree() {
        // 5y^2 + y over F_5
        let p = Poly::from_coeffs(vec![
            AdPoly::zero(),
            AdPoly::one(),
            AdPoly::constant(bi(5)),
        ]);
        let r = p.reduce_mod(5);
        assert_eq!(r.degree(), Some(1));
    }

    fn arb_coef() -> impl Strategy<Value = AdPoly<BigInt>> {
        proptest::collection::vec((0u32..3, 0u32..3, -6i64..7), 0..4).prop_map(|ts| {
            AdPoly::from_terms(ts.into_iter().map(|(i, j, c)| (bi(c), i, j)))
        })
    }

    fn arb_poly() -> impl Strategy<Value = YPoly> {
        proptest::collection::vec(arb_coef(), 0..5).prop_map(Poly::from_coeffs)
    }

    proptest! {
        #[test]
        fn ring_axioms(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        }

        #[test]
        fn exact_div_inverts_multiplication(p in arb_poly(), q in arb_poly()) {
            // force a unit leading coefficient on the divisor
            let mut div = q;
            div = &div * &Poly::from_coeffs(vec![AdPoly::zero(), AdPoly::one()]);
            let div = &div + &Poly::constant(AdPoly::one()); // ensure nonzero
            let div = if div.is_zero() { Poly::one() } else { div };
            let mut coeffs: Vec<AdPoly<BigInt>> = div.coeffs().to_vec();
            let last = coeffs.len() - 1;
            coeffs[last] = AdPoly::one();
            let div = Poly::from_coeffs(coeffs);
            let prod = &p * &div;
            prop_assert_eq!(prod.exact_div(&div).unwrap(), p);
        }

        #[test]
        fn eval_is_a_ring_homomorphism(p in arb_poly(), q in arb_poly(),
                                       a in 0u64..13, d in 0u64..13, y in 0u64..13) {
            use crate::algebra::field::PrimeField;
            let f = PrimeField::new(13).unwrap();
            let (a, d, y) = (f.elem(a), f.elem(d), f.elem(y));
            prop_assert_eq!((&p * &q).eval(a, d, y), p.eval(a, d, y) * q.eval(a, d, y));
            prop_assert_eq!((&p + &q).eval(a, d, y), p.eval(a, d, y) + q.eval(a, d, y));
        }
    }
}
