//! Prime-field arithmetic for moduli p > 3.
//!
//! Elements carry their modulus, so values from different fields cannot be
//! mixed silently; mixing panics. All products go through `u128`, which is
//! exact for any 64-bit modulus.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::errors::AlgebraError;

/// A prime field F_p with p > 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Constructs F_p, verifying that `p` is a prime greater than 3.
    pub fn new(p: u64) -> Result<Self, AlgebraError> {
        if p > 3 && is_prime_u64(p) {
            Ok(PrimeField { p })
        } else {
            Err(AlgebraError::InvalidModulus(p))
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// The element `v mod p`.
    pub fn elem(&self, v: u64) -> FieldElem {
        FieldElem { value: v % self.p, p: self.p }
    }

    /// The element `v mod p` for signed input.
    pub fn elem_i64(&self, v: i64) -> FieldElem {
        let r = v.rem_euclid(self.p as i64) as u64;
        FieldElem { value: r, p: self.p }
    }

    /// Reduces an arbitrary-precision integer into the field.
    pub fn elem_bigint(&self, v: &BigInt) -> FieldElem {
        let r = v.mod_floor(&BigInt::from(self.p));
        FieldElem { value: r.to_u64().expect("reduced residue fits u64"), p: self.p }
    }

    pub fn zero(&self) -> FieldElem {
        self.elem(0)
    }

    pub fn one(&self) -> FieldElem {
        self.elem(1)
    }
}

/// An element of F_p, always stored reduced to `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElem {
    value: u64,
    p: u64,
}

impl FieldElem {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn field(&self) -> PrimeField {
        PrimeField { p: self.p }
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn pow(&self, mut e: u64) -> FieldElem {
        let mut base = self.value;
        let mut acc: u64 = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(acc, base, self.p);
            }
            base = mul_mod(base, base, self.p);
            e >>= 1;
        }
        FieldElem { value: acc, p: self.p }
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inverse(&self) -> Result<FieldElem, AlgebraError> {
        if self.value == 0 {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(self.pow(self.p - 2))
    }

    /// `self / rhs`; errors when `rhs` is zero.
    pub fn div(&self, rhs: FieldElem) -> Result<FieldElem, AlgebraError> {
        Ok(*self * rhs.inverse()?)
    }

    /// Legendre symbol: 1 for a nonzero square, -1 for a non-square, 0 for 0.
    pub fn legendre(&self) -> i8 {
        if self.value == 0 {
            return 0;
        }
        let l = self.pow((self.p - 1) / 2);
        if l.value == 1 {
            1
        } else {
            -1
        }
    }

    /// A square root if one exists, choosing the smaller of the two residues
    /// so that enumeration is deterministic.
    pub fn sqrt(&self) -> Option<FieldElem> {
        if self.value == 0 {
            return Some(*self);
        }
        if self.legendre() != 1 {
            return None;
        }
        let p = self.p;
        let r = if p % 4 == 3 {
            self.pow((p + 1) / 4).value
        } else {
            tonelli_shanks(self.value, p)
        };
        let r = r.min(p - r);
        Some(FieldElem { value: r, p })
    }

    fn expect_same_field(&self, other: &FieldElem) {
        assert_eq!(
            self.p, other.p,
            "arithmetic between elements of different fields (p={} vs p={})",
            self.p, other.p
        );
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

impl Add for FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: FieldElem) -> FieldElem {
        self.expect_same_field(&rhs);
        let v = ((self.value as u128 + rhs.value as u128) % self.p as u128) as u64;
        FieldElem { value: v, p: self.p }
    }
}

impl Sub for FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: FieldElem) -> FieldElem {
        self.expect_same_field(&rhs);
        let v = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            self.p - (rhs.value - self.value)
        };
        FieldElem { value: v, p: self.p }
    }
}

impl Mul for FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: FieldElem) -> FieldElem {
        self.expect_same_field(&rhs);
        FieldElem { value: mul_mod(self.value, rhs.value, self.p), p: self.p }
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        let v = if self.value == 0 { 0 } else { self.p - self.value };
        FieldElem { value: v, p: self.p }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}

/// Deterministic Miller-Rabin for u64 inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // This witness set decides primality for all n < 3.3 * 10^24.
    'witness: for w in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(w, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    base %= p;
    let mut acc: u64 = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

fn tonelli_shanks(n: u64, p: u64) -> u64 {
    // p % 4 == 1, n a known quadratic residue
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(n, q, p);
    let mut r = pow_mod(n, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    r
}
