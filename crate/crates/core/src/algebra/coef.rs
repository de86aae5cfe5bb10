//! Sparse bivariate polynomials in the curve parameters a and d.
//!
//! Terms are kept in a map from exponent pairs `(a_exp, d_exp)` to nonzero
//! coefficients, so two values are equal exactly when their term maps are.
//! The division-polynomial coefficients this type houses are homogeneous in
//! (a, d), which keeps the maps small even when the y-degree is large.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::FieldElem;
use super::scalar::Scalar;

/// A polynomial in Z[a, d] (or R[a, d] for any scalar ring R).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct AdPoly<C> {
    terms: BTreeMap<(u32, u32), C>,
}

impl<C: Scalar> AdPoly<C> {
    pub fn zero() -> Self {
        AdPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::term(c, 0, 0)
    }

    /// The monomial `c * a^a_exp * d^d_exp`.
    pub fn term(c: C, a_exp: u32, d_exp: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((a_exp, d_exp), c);
        }
        AdPoly { terms }
    }

    /// The variable a.
    pub fn var_a() -> Self {
        Self::term(C::one(), 1, 0)
    }

    /// The variable d.
    pub fn var_d() -> Self {
        Self::term(C::one(), 0, 1)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (C, u32, u32)>) -> Self {
        let mut out = Self::zero();
        for (c, i, j) in terms {
            out.add_term(c, i, j);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterates `((a_exp, d_exp), coeff)` in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a_exp: u32, d_exp: u32) -> Option<&C> {
        self.terms.get(&(a_exp, d_exp))
    }

    fn add_term(&mut self, c: C, a_exp: u32, d_exp: u32) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((a_exp, d_exp)) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let cur = o.get_mut();
                let sum = cur.clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *cur = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (&(i, j), v) in &self.terms {
            let mut t = C::zero();
            t.mul_add_assign(v, c);
            out.add_term(t, i, j);
        }
        out
    }

    /// True when every term has total degree exactly `h`.
    ///
    /// The zero polynomial is homogeneous of every degree.
    pub fn is_homogeneous_of_degree(&self, h: u32) -> bool {
        self.terms.keys().all(|&(i, j)| i + j == h)
    }

    /// Substitutes a -> -d, d -> -a; on a monomial `c a^i d^j` this yields
    /// `(-1)^(i+j) c a^j d^i`.
    pub fn negate_swap(&self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            let c = if (i + j) % 2 == 1 { -c.clone() } else { c.clone() };
            out.add_term(c, j, i);
        }
        out
    }
}

impl AdPoly<BigInt> {
    /// Evaluates at field values for a and d.
    pub fn eval(&self, a: FieldElem, d: FieldElem) -> FieldElem {
        let field = a.field();
        let mut acc = field.zero();
        for (&(i, j), c) in &self.terms {
            acc = acc + field.elem_bigint(c) * a.pow(i as u64) * d.pow(j as u64);
        }
        acc
    }

    /// Reduces every coefficient into `[0, p)`, dropping vanishing terms.
    pub fn reduce_mod(&self, p: u64) -> Self {
        let m = BigInt::from(p);
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            out.add_term(c.mod_floor(&m), i, j);
        }
        out
    }

    /// Gcd of the absolute values of all coefficients; zero for the zero
    /// polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides every coefficient by `g`, which must divide the content.
    pub fn div_int(&self, g: &BigInt) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            debug_assert!((c % g).is_zero());
            out.add_term(c / g, i, j);
        }
        out
    }
}

impl<C: Scalar> Add for AdPoly<C> {
    type Output = AdPoly<C>;
    fn add(self, rhs: AdPoly<C>) -> AdPoly<C> {
        let mut out = self;
        for ((i, j), c) in rhs.terms {
            out.add_term(c, i, j);
        }
        out
    }
}

impl<C: Scalar> Add for &AdPoly<C> {
    type Output = AdPoly<C>;
    fn add(self, rhs: &AdPoly<C>) -> AdPoly<C> {
        self.clone() + rhs.clone()
    }
}

impl<C: Scalar> Sub for AdPoly<C> {
    type Output = AdPoly<C>;
    fn sub(self, rhs: AdPoly<C>) -> AdPoly<C> {
        let mut out = self;
        for ((i, j), c) in rhs.terms {
            out.add_term(-c, i, j);
        }
        out
    }
}

impl<C: Scalar> Sub for &AdPoly<C> {
    type Output = AdPoly<C>;
    fn sub(self, rhs: &AdPoly<C>) -> AdPoly<C> {
        self.clone() - rhs.clone()
    }
}

impl<C: Scalar> Neg for AdPoly<C> {
    type Output = AdPoly<C>;
    fn neg(self) -> AdPoly<C> {
        let terms = self.terms.into_iter().map(|(k, c)| (k, -c)).collect();
        AdPoly { terms }
    }
}

impl<C: Scalar> Mul for &AdPoly<C> {
    type Output = AdPoly<C>;
    fn mul(self, rhs: &AdPoly<C>) -> AdPoly<C> {
        let mut out = AdPoly::zero();
        out.mul_add_assign(self, rhs);
        out
    }
}

impl<C: Scalar> Mul for AdPoly<C> {
    type Output = AdPoly<C>;
    fn mul(self, rhs: AdPoly<C>) -> AdPoly<C> {
        &self * &rhs
    }
}

impl<C: Scalar> Zero for AdPoly<C> {
    fn zero() -> Self {
        AdPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Scalar> One for AdPoly<C> {
    fn one() -> Self {
        AdPoly::one()
    }
}

impl<C: Scalar> Scalar for AdPoly<C> {
    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        for (&(ia, ja), ca) in &a.terms {
            for (&(ib, jb), cb) in &b.terms {
                let key = (ia + ib, ja + jb);
                match self.terms.entry(key) {
                    std::collections::btree_map::Entry::Vacant(v) => {
                        let mut t = C::zero();
                        t.mul_add_assign(ca, cb);
                        if !t.is_zero() {
                            v.insert(t);
                        }
                    }
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        o.get_mut().mul_add_assign(ca, cb);
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                }
            }
        }
    }
}

/// Renders terms with a before d, highest total degree first, explicit signs.
impl<C: Scalar + Signed + fmt::Display> fmt::Display for AdPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, ((i, j), c)) in sorted_for_display(self).into_iter().enumerate() {
            write_term(f, idx == 0, c, &monomial_factors(i, j, 0))?;
        }
        Ok(())
    }
}

/// Display order: total degree descending, then a-exponent descending.
pub(crate) fn sorted_for_display<C>(p: &AdPoly<C>) -> Vec<((u32, u32), &C)> {
    let mut v: Vec<_> = p.terms.iter().map(|(&k, c)| (k, c)).collect();
    v.sort_by(|((i1, j1), _), ((i2, j2), _)| {
        (i2 + j2, i2).cmp(&(i1 + j1, i1))
    });
    v
}

pub(crate) fn monomial_factors(a_exp: u32, d_exp: u32, y_exp: u32) -> Vec<String> {
    let mut fs = Vec::new();
    for (name, e) in [("a", a_exp), ("d", d_exp), ("y", y_exp)] {
        match e {
            0 => {}
            1 => fs.push(name.to_string()),
            _ => fs.push(format!("{name}^{e}")),
        }
    }
    fs
}

pub(crate) fn write_term<C: Signed + fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: &C,
    factors: &[String],
) -> fmt::Result {
    let neg = c.is_negative();
    match (first, neg) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    let mag = c.abs();
    if factors.is_empty() {
        write!(f, "{mag}")
    } else if mag.is_one() {
        write!(f, "{}", factors.join("*"))
    } else {
        write!(f, "{}*{}", mag, factors.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::super::field::PrimeField;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn a_minus_d() -> AdPoly<BigInt> {
        AdPoly::from_terms([(bi(1), 1, 0), (bi(-1), 0, 1)])
    }

    fn a_plus_d() -> AdPoly<BigInt> {
        AdPoly::from_terms([(bi(1), 1, 0), (bi(1), 0, 1)])
    }

    #[test]
    fn difference_of_squares() {
        let got = &a_minus_d() * &a_plus_d();
        let want = AdPoly::from_terms([(bi(1), 2, 0), (bi(-1), 0, 2)]);
        assert_eq!(got, want);
    }

    #[test]
    fn multiply_by_zero() {
        assert!((&a_minus_d() * &AdPoly::zero()).is_zero());
    }

    #[test]
    fn cube_of_difference() {
        let amd = a_minus_d();
        let got = &(&amd * &amd) * &amd;
        let want = AdPoly::from_terms([
            (bi(1), 3, 0),
            (bi(-3), 2, 1),
            (bi(3), 1, 2),
            (bi(-1), 0, 3),
        ]);
        assert_eq!(got, want);
    }

    #[test]
    fn cancellation_removes_terms() {
        let s = a_minus_d() - a_minus_d();
        assert!(s.is_zero());
        assert_eq!(s.len(), 0);
    }

    #[test]
    fn negate_swap_on_a_minus_d() {
        // a -> -d, d -> -a fixes a - d
        assert_eq!(a_minus_d().negate_swap(), a_minus_d());
        assert!(AdPoly::<BigInt>::zero().negate_swap().is_zero());
    }

    #[test]
    fn homogeneity_check() {
        assert!(a_minus_d().is_homogeneous_of_degree(1));
        assert!(!a_minus_d().is_homogeneous_of_degree(2));
        assert!(AdPoly::<BigInt>::zero().is_homogeneous_of_degree(7));
        let mixed = AdPoly::from_terms([(bi(1), 1, 0), (bi(1), 0, 2)]);
        assert!(!mixed.is_homogeneous_of_degree(1));
    }

    #[test]
    fn eval_mod_p() {
        let f = PrimeField::new(13).unwrap();
        // a^2 - 3ad at a=2, d=5: 4 - 30 = -26 = 0 mod 13
        let p = AdPoly::from_terms([(bi(1), 2, 0), (bi(-3), 1, 1)]);
        assert_eq!(p.eval(f.elem(2), f.elem(5)), f.elem(0));
    }

    #[test]
    fn reduce_mod_drops_terms() {
        let p = AdPoly::from_terms([(bi(10), 1, 0), (bi(3), 0, 1)]);
        let r = p.reduce_mod(5);
        assert_eq!(r.coeff(1, 0), None);
        assert_eq!(r.coeff(0, 1), Some(&bi(3)));
    }

    #[test]
    fn content_and_div() {
        let p = AdPoly::from_terms([(bi(6), 1, 0), (bi(-9), 0, 1)]);
        assert_eq!(p.content(), bi(3));
        let q = p.div_int(&bi(3));
        assert_eq!(q, AdPoly::from_terms([(bi(2), 1, 0), (bi(-3), 0, 1)]));
    }

    #[test]
    fn display_ordering() {
        let p = AdPoly::from_terms([
            (bi(4), 1, 3),
            (bi(4), 0, 4),
            (bi(-1), 1, 0),
            (bi(2), 0, 0),
        ]);
        assert_eq!(p.to_string(), "4*a*d^3 + 4*d^4 - a + 2");
        assert_eq!(AdPoly::<BigInt>::zero().to_string(), "0");
    }
}
