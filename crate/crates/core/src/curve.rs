//! Twisted Edwards and short Weierstrass point arithmetic over F_p, and the
//! birational equivalence between them.
//!
//! The Edwards side uses the affine addition rule; when d is a non-square
//! the denominators never vanish, and when d is a square a vanishing
//! denominator is reported as an error rather than papered over with
//! projective formulas, since the affine law is the object under test here.
//! The Weierstrass side carries the classical chord-tangent law and serves
//! as the ground-truth group for every oracle comparison.

use serde::{Deserialize, Serialize};

use crate::algebra::{FieldElem, PrimeField};
use crate::errors::CurveError;

/// The curve a x^2 + y^2 = 1 + d x^2 y^2 with a, d distinct and nonzero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdwardsCurve {
    field: PrimeField,
    a: FieldElem,
    d: FieldElem,
}

/// An affine point on a twisted Edwards curve. The identity is (0, 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdwardsPoint {
    x: u64,
    y: u64,
}

impl EdwardsPoint {
    pub fn x(&self) -> u64 {
        self.x
    }

    pub fn y(&self) -> u64 {
        self.y
    }
}

impl std::fmt::Display for EdwardsPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({} : {})", self.x, self.y)
    }
}

impl EdwardsCurve {
    pub fn new(field: PrimeField, a: u64, d: u64) -> Result<Self, CurveError> {
        let a = field.elem(a);
        let d = field.elem(d);
        if a.is_zero() || d.is_zero() || a == d {
            return Err(CurveError::InvalidParameters);
        }
        Ok(EdwardsCurve { field, a, d })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn a(&self) -> FieldElem {
        self.a
    }

    pub fn d(&self) -> FieldElem {
        self.d
    }

    pub fn identity(&self) -> EdwardsPoint {
        EdwardsPoint { x: 0, y: 1 }
    }

    /// The unique point of order 2, (0, -1): doubling any fixed point of
    /// negation forces x = -x, hence x = 0 and y = -1 away from the
    /// identity.
    pub fn order_two_point(&self) -> EdwardsPoint {
        EdwardsPoint { x: 0, y: self.field.modulus() - 1 }
    }

    pub fn contains(&self, p: &EdwardsPoint) -> bool {
        let (x, y) = self.coords(p);
        let x2 = x * x;
        let y2 = y * y;
        self.a * x2 + y2 == self.field.one() + self.d * x2 * y2
    }

    /// Validates coordinates against the curve equation.
    pub fn point(&self, x: u64, y: u64) -> Result<EdwardsPoint, CurveError> {
        let p = EdwardsPoint { x: x % self.field.modulus(), y: y % self.field.modulus() };
        if self.contains(&p) {
            Ok(p)
        } else {
            Err(CurveError::PointNotOnCurve)
        }
    }

    pub fn coords(&self, p: &EdwardsPoint) -> (FieldElem, FieldElem) {
        (self.field.elem(p.x), self.field.elem(p.y))
    }

    pub fn neg(&self, p: &EdwardsPoint) -> EdwardsPoint {
        let (x, y) = self.coords(p);
        EdwardsPoint { x: (-x).value(), y: y.value() }
    }

    /// The affine addition rule.
    pub fn add(&self, p: &EdwardsPoint, q: &EdwardsPoint) -> Result<EdwardsPoint, CurveError> {
        let (x1, y1) = self.coords(p);
        let (x2, y2) = self.coords(q);
        let prod = self.d * x1 * x2 * y1 * y2;
        let one = self.field.one();
        let den_x = one + prod;
        let den_y = one - prod;
        if den_x.is_zero() || den_y.is_zero() {
            return Err(CurveError::DenominatorZero);
        }
        let x3 = (x1 * y2 + x2 * y1).div(den_x).expect("nonzero checked");
        let y3 = (y1 * y2 - self.a * x1 * x2).div(den_y).expect("nonzero checked");
        Ok(EdwardsPoint { x: x3.value(), y: y3.value() })
    }

    /// n-fold sum by double-and-add built from the addition rule alone;
    /// the reference implementation the divpoly route is checked against.
    pub fn scalar_mul_naive(&self, p: &EdwardsPoint, n: u64) -> Result<EdwardsPoint, CurveError> {
        let mut acc = self.identity();
        if n == 0 {
            return Ok(acc);
        }
        for bit in (0..64 - n.leading_zeros()).rev() {
            acc = self.add(&acc, &acc)?;
            if (n >> bit) & 1 == 1 {
                acc = self.add(&acc, p)?;
            }
        }
        Ok(acc)
    }

    /// Additive order of a point, by iterated addition.
    pub fn order_of(&self, p: &EdwardsPoint) -> Result<u64, CurveError> {
        let cap = self.hasse_bound();
        let mut acc = *p;
        let mut n = 1;
        while acc != self.identity() {
            acc = self.add(&acc, p)?;
            n += 1;
            if n > cap {
                return Err(CurveError::OrderSearchExceeded);
            }
        }
        Ok(n)
    }

    fn hasse_bound(&self) -> u64 {
        let p = self.field.modulus();
        let s = (p as f64).sqrt() as u64 + 1;
        p + 1 + 2 * s + 1
    }

    /// Every affine point, in lexicographic (x, y) residue order.
    pub fn enumerate_points(&self, max_modulus: u64) -> Result<Vec<EdwardsPoint>, CurveError> {
        let p = self.field.modulus();
        if p > max_modulus {
            return Err(CurveError::FieldTooLarge);
        }
        let mut out = Vec::new();
        let one = self.field.one();
        for x in 0..p {
            let xe = self.field.elem(x);
            let den = one - self.d * xe * xe;
            if den.is_zero() {
                continue;
            }
            let rhs = (one - self.a * xe * xe).div(den).expect("nonzero checked");
            if let Some(r) = rhs.sqrt() {
                if r.is_zero() {
                    out.push(EdwardsPoint { x, y: 0 });
                } else {
                    let (lo, hi) = (r.value().min(p - r.value()), r.value().max(p - r.value()));
                    out.push(EdwardsPoint { x, y: lo });
                    out.push(EdwardsPoint { x, y: hi });
                }
            }
        }
        Ok(out)
    }

    /// The short Weierstrass model v^2 = u^3 + A u + B of this curve.
    pub fn weierstrass(&self) -> WeierstrassCurve {
        let f = self.field;
        let (a, d) = (self.a, self.d);
        let c = |v: u64| f.elem(v);
        let a4 = -(a * a + c(14) * a * d + d * d).div(c(48)).expect("p > 3");
        let a6 = -(a * a * a - c(33) * a * a * d - c(33) * a * d * d + d * d * d)
            .div(c(864))
            .expect("p > 3");
        let w = WeierstrassCurve { field: f, a4, a6 };
        debug_assert!(!w.discriminant_term().is_zero(), "singular Weierstrass model");
        w
    }

    /// The birational map to the Weierstrass model, defined on every point.
    pub fn to_weierstrass(&self, p: &EdwardsPoint) -> WeierstrassPoint {
        let f = self.field;
        if *p == self.identity() {
            return WeierstrassPoint::Infinity;
        }
        let (a, d) = (self.a, self.d);
        if *p == self.order_two_point() {
            let u = (a + d).div(f.elem(6)).expect("p > 3");
            return WeierstrassPoint::affine(u, f.zero());
        }
        let (x, y) = self.coords(p);
        let one = f.one();
        // x(1-y) = 0 only at (0, +-1), which are handled above
        let u = ((f.elem(5) * a - d) + (a - f.elem(5) * d) * y)
            .div(f.elem(12) * (one - y))
            .expect("nonzero");
        let v = ((a - d) * (one + y)).div(f.elem(4) * x * (one - y)).expect("nonzero");
        WeierstrassPoint::affine(u, v)
    }

    /// The inverse map. Exceptional points (the four Weierstrass points
    /// with no Edwards preimage) are returned as values, not errors; for an
    /// on-curve input every other point maps back onto the curve.
    pub fn from_weierstrass(&self, q: &WeierstrassPoint) -> EdwardsPreimage {
        let f = self.field;
        let (a, d) = (self.a, self.d);
        let (u, v) = match q {
            WeierstrassPoint::Infinity => return EdwardsPreimage::Point(self.identity()),
            WeierstrassPoint::Affine { u, v } => (f.elem(*u), f.elem(*v)),
        };
        let low = (a + d).div(f.elem(6)).expect("p > 3");
        if v.is_zero() && u == low {
            return EdwardsPreimage::Point(self.order_two_point());
        }
        if v.is_zero() {
            // remaining roots of the cubic: order-2 points outside the image
            return EdwardsPreimage::Exceptional(ExceptionalPoint {
                u: u.value(),
                v: 0,
                order: 2,
            });
        }
        let t = f.elem(12) * u + a - f.elem(5) * d;
        if t.is_zero() {
            return EdwardsPreimage::Exceptional(ExceptionalPoint {
                u: u.value(),
                v: v.value(),
                order: 4,
            });
        }
        let x = (f.elem(6) * u - (a + d)).div(f.elem(6) * v).expect("nonzero");
        let y = (f.elem(12) * u + d - f.elem(5) * a).div(t).expect("nonzero");
        let pt = EdwardsPoint { x: x.value(), y: y.value() };
        debug_assert!(self.contains(&pt));
        EdwardsPreimage::Point(pt)
    }

    /// The Weierstrass points with no Edwards preimage, with their orders:
    /// ((5d-a)/12, +-s(d-a)/4) of order 4 when s^2 = d has a root, and
    /// ((-(a+d) +- 6t)/12, 0) of order 2 when t^2 = ad has one.
    pub fn exceptional_points(&self) -> Vec<ExceptionalPoint> {
        let f = self.field;
        let (a, d) = (self.a, self.d);
        let mut out = Vec::new();
        if let Some(s) = d.sqrt() {
            let u = (f.elem(5) * d - a).div(f.elem(12)).expect("p > 3");
            let v = (s * (d - a)).div(f.elem(4)).expect("p > 3");
            for w in [v, -v] {
                out.push(ExceptionalPoint { u: u.value(), v: w.value(), order: 4 });
            }
        }
        if let Some(t) = (a * d).sqrt() {
            let six_t = f.elem(6) * t;
            for s in [six_t, -six_t] {
                let u = (-(a + d) + s).div(f.elem(12)).expect("p > 3");
                out.push(ExceptionalPoint { u: u.value(), v: 0, order: 2 });
            }
        }
        out
    }
}

/// Result of pulling a Weierstrass point back along the birational map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdwardsPreimage {
    Point(EdwardsPoint),
    Exceptional(ExceptionalPoint),
}

/// A Weierstrass point outside the image of the Edwards curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalPoint {
    pub u: u64,
    pub v: u64,
    /// Its order in the Weierstrass group: 2 or 4.
    pub order: u8,
}

/// A short Weierstrass curve v^2 = u^3 + a4 u + a6.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeierstrassCurve {
    field: PrimeField,
    a4: FieldElem,
    a6: FieldElem,
}

/// A point on a Weierstrass curve: the point at infinity or affine (u, v).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeierstrassPoint {
    Infinity,
    Affine { u: u64, v: u64 },
}

impl WeierstrassPoint {
    pub fn affine(u: FieldElem, v: FieldElem) -> Self {
        WeierstrassPoint::Affine { u: u.value(), v: v.value() }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, WeierstrassPoint::Infinity)
    }
}

impl std::fmt::Display for WeierstrassPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WeierstrassPoint::Infinity => write!(f, "O"),
            WeierstrassPoint::Affine { u, v } => write!(f, "({u} : {v})"),
        }
    }
}

impl WeierstrassCurve {
    pub fn new(field: PrimeField, a4: u64, a6: u64) -> Self {
        WeierstrassCurve { field: field, a4: field.elem(a4), a6: field.elem(a6) }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn a4(&self) -> FieldElem {
        self.a4
    }

    pub fn a6(&self) -> FieldElem {
        self.a6
    }

    fn discriminant_term(&self) -> FieldElem {
        let f = self.field;
        f.elem(4) * self.a4.pow(3) + f.elem(27) * self.a6 * self.a6
    }

    pub fn contains(&self, p: &WeierstrassPoint) -> bool {
        match p {
            WeierstrassPoint::Infinity => true,
            WeierstrassPoint::Affine { u, v } => {
                let u = self.field.elem(*u);
                let v = self.field.elem(*v);
                v * v == u.pow(3) + self.a4 * u + self.a6
            }
        }
    }

    pub fn neg(&self, p: &WeierstrassPoint) -> WeierstrassPoint {
        match p {
            WeierstrassPoint::Infinity => WeierstrassPoint::Infinity,
            WeierstrassPoint::Affine { u, v } => {
                WeierstrassPoint::Affine { u: *u, v: (-self.field.elem(*v)).value() }
            }
        }
    }

    /// Chord-tangent addition with the point at infinity as identity.
    pub fn add(&self, p: &WeierstrassPoint, q: &WeierstrassPoint) -> WeierstrassPoint {
        let f = self.field;
        let (u1, v1) = match p {
            WeierstrassPoint::Infinity => return *q,
            WeierstrassPoint::Affine { u, v } => (f.elem(*u), f.elem(*v)),
        };
        let (u2, v2) = match q {
            WeierstrassPoint::Infinity => return *p,
            WeierstrassPoint::Affine { u, v } => (f.elem(*u), f.elem(*v)),
        };
        let lambda = if u1 == u2 {
            if (v1 + v2).is_zero() {
                return WeierstrassPoint::Infinity;
            }
            (f.elem(3) * u1 * u1 + self.a4).div(f.elem(2) * v1).expect("v1 != 0")
        } else {
            (v2 - v1).div(u2 - u1).expect("u2 != u1")
        };
        let u3 = lambda * lambda - u1 - u2;
        let v3 = lambda * (u1 - u3) - v1;
        WeierstrassPoint::affine(u3, v3)
    }

    pub fn scalar_mul_naive(&self, p: &WeierstrassPoint, n: u64) -> WeierstrassPoint {
        let mut acc = WeierstrassPoint::Infinity;
        if n == 0 {
            return acc;
        }
        for bit in (0..64 - n.leading_zeros()).rev() {
            acc = self.add(&acc, &acc);
            if (n >> bit) & 1 == 1 {
                acc = self.add(&acc, p);
            }
        }
        acc
    }

    pub fn order_of(&self, p: &WeierstrassPoint) -> u64 {
        let mut acc = *p;
        let mut n = 1;
        while !acc.is_infinity() {
            acc = self.add(&acc, p);
            n += 1;
        }
        n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(p: u64, a: u64, d: u64) -> EdwardsCurve {
        EdwardsCurve::new(PrimeField::new(p).unwrap(), a, d).unwrap()
    }

    #[test]
    fn invalid_parameters_rejected() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(EdwardsCurve::new(f, 2, 2), Err(CurveError::InvalidParameters));
        assert_eq!(EdwardsCurve::new(f, 0, 3), Err(CurveError::InvalidParameters));
        assert_eq!(EdwardsCurve::new(f, 3, 7), Err(CurveError::InvalidParameters));
    }

    #[test]
    fn identity_and_inverse() {
        let c = curve(13, 1, 2);
        let pts = c.enumerate_points(100).unwrap();
        for p in &pts {
            assert_eq!(c.add(&c.identity(), p).unwrap(), *p);
            assert_eq!(c.add(p, &c.neg(p)).unwrap(), c.identity());
        }
    }

    #[test]
    fn doubling_the_order_two_point() {
        let c = curve(13, 1, 2);
        let m = c.order_two_point();
        assert_eq!(c.add(&m, &m).unwrap(), c.identity());
        assert_eq!(c.order_of(&m).unwrap(), 2);
    }

    #[test]
    fn group_axioms_on_enumerated_curve() {
        let c = curve(17, 1, 3);
        let pts = c.enumerate_points(100).unwrap();
        for p in &pts {
            assert!(c.contains(p));
        }
        // closure + associativity on a sample
        for (i, p) in pts.iter().enumerate() {
            for q in pts.iter().skip(i % 3).step_by(3) {
                let s = c.add(p, q).unwrap();
                assert!(c.contains(&s));
                for r in pts.iter().step_by(7) {
                    let left = c.add(&c.add(p, q).unwrap(), r).unwrap();
                    let right = c.add(p, &c.add(q, r).unwrap()).unwrap();
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn scalar_mul_naive_basics() {
        let c = curve(13, 1, 2);
        let p = c.enumerate_points(100).unwrap()[3];
        assert_eq!(c.scalar_mul_naive(&p, 0).unwrap(), c.identity());
        assert_eq!(c.scalar_mul_naive(&p, 1).unwrap(), p);
        let ord = c.order_of(&p).unwrap();
        assert_eq!(c.scalar_mul_naive(&p, 2 * ord).unwrap(), c.identity());
    }

    #[test]
    fn special_point_images() {
        let c = curve(13, 1, 2);
        let w = c.weierstrass();
        assert_eq!(c.to_weierstrass(&c.identity()), WeierstrassPoint::Infinity);
        let m = c.to_weierstrass(&c.order_two_point());
        // (0,-1) maps to ((a+d)/6, 0)
        let f = c.field();
        let want = (f.elem(1) + f.elem(2)).div(f.elem(6)).unwrap();
        assert_eq!(m, WeierstrassPoint::Affine { u: want.value(), v: 0 });
        assert!(w.contains(&m));
        assert_eq!(w.add(&m, &m), WeierstrassPoint::Infinity);
    }

    #[test]
    fn map_round_trips_and_is_homomorphic() {
        for (p, a, d) in [(13, 1, 2), (17, 1, 3), (29, 1, 2), (11, 3, 7)] {
            let c = curve(p, a, d);
            let w = c.weierstrass();
            let pts = c.enumerate_points(100).unwrap();
            for pt in &pts {
                let im = c.to_weierstrass(pt);
                assert!(w.contains(&im));
                assert_eq!(c.from_weierstrass(&im), EdwardsPreimage::Point(*pt));
            }
            for pt in pts.iter().step_by(3) {
                for qt in pts.iter().step_by(5) {
                    if let Ok(s) = c.add(pt, qt) {
                        let lhs = c.to_weierstrass(&s);
                        let rhs = w.add(&c.to_weierstrass(pt), &c.to_weierstrass(qt));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn exceptional_points_have_stated_orders() {
        // p=17, a=1, d=4: d is a square (2^2), ad = 4 is a square
        let c = curve(17, 1, 4);
        let w = c.weierstrass();
        let ex = c.exceptional_points();
        assert_eq!(ex.len(), 4);
        for e in &ex {
            let q = WeierstrassPoint::Affine { u: e.u, v: e.v };
            assert!(w.contains(&q));
            assert_eq!(w.order_of(&q) as u8, e.order);
            match c.from_weierstrass(&q) {
                EdwardsPreimage::Exceptional(got) => assert_eq!(got.order, e.order),
                EdwardsPreimage::Point(_) => panic!("exceptional point mapped to a point"),
            }
        }
    }

    #[test]
    fn no_exceptional_points_when_roots_missing() {
        // p=13, a=1, d=2: 2 and 1*2 are non-squares mod 13
        let c = curve(13, 1, 2);
        assert!(c.exceptional_points().is_empty());
    }

    #[test]
    fn denominator_zero_reachable_when_d_is_square() {
        // p=7, d=2=3^2 square, a=3: search for a failing pair
        let c = curve(7, 3, 2);
        let pts = c.enumerate_points(100).unwrap();
        let mut hit = false;
        for p in &pts {
            for q in &pts {
                if c.add(p, q) == Err(CurveError::DenominatorZero) {
                    hit = true;
                }
            }
        }
        assert!(hit, "expected a vanishing denominator on a square-d curve");
    }

    #[test]
    fn enumerate_is_lexicographic_and_complete() {
        let c = curve(5, 1, 2);
        let pts = c.enumerate_points(100).unwrap();
        assert!(pts.contains(&c.identity()));
        assert!(pts.contains(&c.order_two_point()));
        let mut sorted = pts.clone();
        sorted.sort_by_key(|p| (p.x(), p.y()));
        assert_eq!(pts, sorted);
        let c_big = curve(101, 1, 2);
        assert_eq!(c_big.enumerate_points(100), Err(CurveError::FieldTooLarge));
    }

    #[test]
    fn weierstrass_identities() {
        let c = curve(13, 1, 2);
        let w = c.weierstrass();
        let q = c.to_weierstrass(&c.enumerate_points(100).unwrap()[4]);
        assert_eq!(w.add(&WeierstrassPoint::Infinity, &q), q);
        assert_eq!(w.add(&q, &w.neg(&q)), WeierstrassPoint::Infinity);
    }
}
