//! Function-field elements of a twisted Edwards curve in the canonical form
//! p(y) + x q(y), and numeric evaluation of the rational functions that
//! drive the multiplication-by-n formula.
//!
//! Equality of rational functions is decided by cross-multiplication;
//! normalization strips only structural factors (integer content and common
//! powers of y, y-1, y+1). There is deliberately no multivariate gcd
//! anywhere in this crate.

use crate::algebra::{AdPoly, FieldElem, Poly, YPoly};
use crate::curve::{EdwardsCurve, EdwardsPoint};
use crate::divpoly::{gamma, k_exponent, m_exponent, DivPolyTable};
use crate::errors::{AlgebraError, EvalError};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// A quotient of polynomials in y over Z[a,d]; the denominator is nonzero.
#[derive(Debug, Clone)]
pub struct RationalY {
    num: YPoly,
    den: YPoly,
}

fn y_shift() -> YPoly {
    Poly::from_coeffs(vec![AdPoly::zero(), AdPoly::one()])
}

fn y_plus_one() -> YPoly {
    Poly::from_coeffs(vec![AdPoly::one(), AdPoly::one()])
}

fn y_minus_one() -> YPoly {
    Poly::from_coeffs(vec![AdPoly::constant(BigInt::from(-1)), AdPoly::one()])
}

impl RationalY {
    pub fn new(num: YPoly, den: YPoly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let mut r = RationalY { num, den };
        r.normalize();
        Ok(r)
    }

    pub fn from_poly(num: YPoly) -> Self {
        RationalY { num, den: YPoly::one() }
    }

    pub fn zero() -> Self {
        Self::from_poly(YPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(YPoly::one())
    }

    pub fn num(&self) -> &YPoly {
        &self.num
    }

    pub fn den(&self) -> &YPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Strips integer content and common powers of y, y-1 and y+1. These
    /// structural factors are the only cancellation performed; equality
    /// stays semantic (cross-multiplication).
    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = YPoly::one();
            return;
        }
        let g = self.num.content().gcd(&self.den.content());
        if !g.is_one() && !g.is_zero() {
            self.num = self.num.div_int(&g);
            self.den = self.den.div_int(&g);
        }
        for factor in [y_shift(), y_plus_one(), y_minus_one()] {
            loop {
                let (qn, qd) = (self.num.exact_div(&factor), self.den.exact_div(&factor));
                match (qn, qd) {
                    (Ok(n), Ok(d)) if !d.is_zero() => {
                        self.num = n;
                        self.den = d;
                    }
                    _ => break,
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        let mut r = RationalY { num, den: &self.den * &rhs.den };
        r.normalize();
        r
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        RationalY { num: -&self.num, den: self.den.clone() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut r =
            RationalY { num: &self.num * &rhs.num, den: &self.den * &rhs.den };
        r.normalize();
        r
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        if rhs.num.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let mut r =
            RationalY { num: &self.num * &rhs.den, den: &self.den * &rhs.num };
        r.normalize();
        Ok(r)
    }

    pub fn eval(&self, a: FieldElem, d: FieldElem, y: FieldElem) -> Result<FieldElem, EvalError> {
        let den = self.den.eval(a, d, y);
        if den.is_zero() {
            return Err(EvalError::ZeroDenominator);
        }
        Ok(self.num.eval(a, d, y).div(den).expect("nonzero checked"))
    }
}

/// Cross-multiplication equality: n1 d2 == n2 d1 exactly.
impl PartialEq for RationalY {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl std::fmt::Display for RationalY {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == YPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl std::fmt::Display for CanonicalFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.form {
            FnForm::XForm => write!(f, "{} + x*({})", self.p, self.q),
            FnForm::InvXForm => write!(f, "{} + (1/x)*({})", self.p, self.q),
        }
    }
}

/// Which unique representation a [`CanonicalFn`] carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FnForm {
    /// p(y) + x q(y)
    XForm,
    /// p(y) + (1/x) q(y)
    InvXForm,
}

/// A function-field element in one of the two canonical shapes.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalFn {
    pub p: RationalY,
    pub q: RationalY,
    pub form: FnForm,
}

/// x^2 as an element of K(y): (1 - y^2) / (a - d y^2).
pub fn x_squared() -> RationalY {
    let num = Poly::from_coeffs(vec![
        AdPoly::one(),
        AdPoly::zero(),
        AdPoly::constant(BigInt::from(-1)),
    ]);
    let den = Poly::from_coeffs(vec![
        AdPoly::var_a(),
        AdPoly::zero(),
        -AdPoly::var_d(),
    ]);
    RationalY::new(num, den).expect("denominator nonzero")
}

impl CanonicalFn {
    pub fn new_x(p: RationalY, q: RationalY) -> Self {
        CanonicalFn { p, q, form: FnForm::XForm }
    }

    pub fn new_inv_x(p: RationalY, q: RationalY) -> Self {
        CanonicalFn { p, q, form: FnForm::InvXForm }
    }

    /// Componentwise sum; both operands must be in the same form.
    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.form, rhs.form, "cannot add mixed canonical forms");
        CanonicalFn { p: self.p.add(&rhs.p), q: self.q.add(&rhs.q), form: self.form }
    }

    /// Product reduced back to x-form with the substitution
    /// x^2 -> (1 - y^2)/(a - d y^2); both operands must be in x-form.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.form, FnForm::XForm, "multiplication expects x-form");
        assert_eq!(rhs.form, FnForm::XForm, "multiplication expects x-form");
        let p = self.p.mul(&rhs.p).add(&self.q.mul(&rhs.q).mul(&x_squared()));
        let q = self.p.mul(&rhs.q).add(&self.q.mul(&rhs.p));
        CanonicalFn { p, q, form: FnForm::XForm }
    }

    /// Switches between the two forms: q' = q * (1-y^2)/(a-dy^2) going to
    /// inverse-x form, and back with the reciprocal; p is unchanged. An
    /// exact involution.
    pub fn convert(&self) -> Self {
        match self.form {
            FnForm::XForm => CanonicalFn {
                p: self.p.clone(),
                q: self.q.mul(&x_squared()),
                form: FnForm::InvXForm,
            },
            FnForm::InvXForm => CanonicalFn {
                p: self.p.clone(),
                q: self.q.div(&x_squared()).expect("x^2 is nonzero"),
                form: FnForm::XForm,
            },
        }
    }

    /// Evaluates at a curve point.
    pub fn eval(&self, curve: &EdwardsCurve, at: &EdwardsPoint) -> Result<FieldElem, EvalError> {
        let (x, y) = curve.coords(at);
        let p = self.p.eval(curve.a(), curve.d(), y)?;
        let q = self.q.eval(curve.a(), curve.d(), y)?;
        match self.form {
            FnForm::XForm => Ok(p + x * q),
            FnForm::InvXForm => {
                if x.is_zero() && !q.is_zero() {
                    return Err(EvalError::UndefinedAtPoint);
                }
                if q.is_zero() {
                    Ok(p)
                } else {
                    Ok(p + q.div(x).expect("nonzero checked"))
                }
            }
        }
    }

    /// Sum of the y-degrees of all four numerators and denominators; an
    /// upper bound for how many distinct sample points can fool equality.
    pub fn degree_bound(&self) -> usize {
        [&self.p, &self.q]
            .iter()
            .map(|r| {
                r.num().degree().unwrap_or(0) + r.den().degree().unwrap_or(0)
            })
            .sum()
    }
}

/// The closed form of the n-th rational function: its numerator polynomial
/// together with the exponents of (a-d), 2(1-y) and x.
#[derive(Debug, Clone)]
pub struct PsiClosedForm {
    pub n: u64,
    pub m: i64,
    pub k: i64,
    pub gamma: u8,
    pub tilde: YPoly,
}

pub fn psi_closed(table: &mut DivPolyTable, n: u64) -> Result<PsiClosedForm, AlgebraError> {
    Ok(PsiClosedForm {
        n,
        m: m_exponent(n),
        k: k_exponent(n),
        gamma: gamma(n),
        tilde: table.poly(n)?.clone(),
    })
}

impl PsiClosedForm {
    /// Evaluates at a point. Undefined at the identity always, and at
    /// (0, -1) for even n (where the closed form divides by x).
    pub fn eval(&self, curve: &EdwardsCurve, at: &EdwardsPoint) -> Result<FieldElem, EvalError> {
        let f = curve.field();
        if *at == curve.identity() {
            return Err(EvalError::UndefinedAtPoint);
        }
        let (x, y) = curve.coords(at);
        if self.gamma == 1 && x.is_zero() {
            return Err(EvalError::UndefinedAtPoint);
        }
        if self.n == 0 {
            return Ok(f.zero());
        }
        let a_minus_d = curve.a() - curve.d();
        let t = f.elem(2) * (f.one() - y);
        // y = 1 occurs only at the identity, excluded above
        let mut val = a_minus_d.pow(self.k as u64)
            * self.tilde.eval(curve.a(), curve.d(), y)
            * t.pow(self.m as u64).inverse().expect("y != 1");
        if self.gamma == 1 {
            val = val * x.inverse().expect("x != 0 checked");
        }
        Ok(val)
    }
}

/// Evaluates the n-th rational function at a point via the closed form.
pub fn psi_eval(
    table: &mut DivPolyTable,
    curve: &EdwardsCurve,
    n: u64,
    at: &EdwardsPoint,
) -> Result<FieldElem, EvalError> {
    psi_closed(table, n)?.eval(curve, at)
}

/// Evaluates the pair (phi_n, omega_n) at a point:
/// phi = (1+y) psi_n^2 / (1-y) - 4 psi_{n-1} psi_{n+1} / (a-d) and
/// omega = 2 psi_{2n} / ((a-d) psi_n). Requires n >= 1 and a point other
/// than (0, +-1); omega additionally needs psi_n nonzero.
pub fn phi_omega_eval(
    table: &mut DivPolyTable,
    curve: &EdwardsCurve,
    n: u64,
    at: &EdwardsPoint,
) -> Result<(FieldElem, FieldElem), EvalError> {
    assert!(n >= 1);
    let f = curve.field();
    if *at == curve.identity() || *at == curve.order_two_point() {
        return Err(EvalError::UndefinedAtPoint);
    }
    let (_, y) = curve.coords(at);
    let psi_n = psi_eval(table, curve, n, at)?;
    let psi_prev = psi_eval(table, curve, n - 1, at)?;
    let psi_next = psi_eval(table, curve, n + 1, at)?;
    let psi_2n = psi_eval(table, curve, 2 * n, at)?;
    let a_minus_d = curve.a() - curve.d();
    let one = f.one();
    let phi = ((one + y) * psi_n * psi_n).div(one - y).expect("y != 1")
        - (f.elem(4) * psi_prev * psi_next).div(a_minus_d).expect("a != d");
    if psi_n.is_zero() {
        return Err(EvalError::ZeroDenominator);
    }
    let omega = (f.elem(2) * psi_2n).div(a_minus_d * psi_n).expect("nonzero");
    Ok((phi, omega))
}

/// Distinct-y sample points for semantic equality testing, skipping the
/// two points the canonical functions are undefined at.
pub fn sample_points_distinct_y(curve: &EdwardsCurve, count: usize) -> Vec<EdwardsPoint> {
    let f = curve.field();
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for x in 1..f.modulus() {
        if out.len() >= count {
            break;
        }
        let xe = f.elem(x);
        let den = f.one() - curve.d() * xe * xe;
        if den.is_zero() {
            continue;
        }
        let rhs = (f.one() - curve.a() * xe * xe).div(den).expect("nonzero");
        if let Some(r) = rhs.sqrt() {
            let y = r.value();
            if y == 1 || y == f.modulus() - 1 {
                continue;
            }
            if seen.insert(y) {
                out.push(curve.point(x, y).expect("on curve by construction"));
            }
        }
    }
    out
}

/// Pointwise agreement of two x-form elements on the samples, testing both
/// (x, y) and (-x, y); points where either side is undefined are skipped.
pub fn agree_on_samples(
    f: &CanonicalFn,
    g: &CanonicalFn,
    curve: &EdwardsCurve,
    samples: &[EdwardsPoint],
) -> bool {
    for pt in samples {
        for q in [*pt, curve.neg(pt)] {
            match (f.eval(curve, &q), g.eval(curve, &q)) {
                (Ok(u), Ok(v)) if u != v => return false,
                _ => {}
            }
        }
    }
    true
}
