//! Classical division polynomials on a short Weierstrass curve, evaluated
//! numerically per point, and the multiplication-by-n map built from them.
//!
//! Nothing here is symbolic: the Edwards side owns the symbolic story and
//! this module exists to be the independent oracle it is checked against.

use std::collections::HashMap;

use crate::algebra::FieldElem;
use crate::curve::{WeierstrassCurve, WeierstrassPoint};
use crate::errors::EvalError;

/// Per-curve cache of division-polynomial values, keyed per point.
#[derive(Debug, Clone)]
pub struct WsDivTable {
    curve: WeierstrassCurve,
    cache: HashMap<(u64, u64), HashMap<u64, FieldElem>>,
}

impl WsDivTable {
    pub fn new(curve: WeierstrassCurve) -> Self {
        WsDivTable { curve, cache: HashMap::new() }
    }

    pub fn curve(&self) -> &WeierstrassCurve {
        &self.curve
    }

    /// Evaluates the n-th division polynomial at an affine point.
    ///
    /// The even-index recursion divides by the index-2 value 2v, so points
    /// of order 2 (v = 0) report `ZeroDenominator` on any even index.
    pub fn psi(&mut self, n: u64, q: &WeierstrassPoint) -> Result<FieldElem, EvalError> {
        let (u, v) = match q {
            WeierstrassPoint::Infinity => return Err(EvalError::UndefinedAtPoint),
            WeierstrassPoint::Affine { u, v } => (*u, *v),
        };
        let f = self.curve.field();
        let (a4, a6) = (self.curve.a4(), self.curve.a6());
        let memo = self.cache.entry((u, v)).or_default();
        eval_rec(f.elem(u), f.elem(v), a4, a6, n, memo)
    }

    /// [n]Q through the division-polynomial formula; the infinity cases are
    /// Psi_n(Q) = 0 (Q is n-torsion) and n = 0.
    ///
    /// At an order-2 point every even-index value vanishes (2v divides
    /// them), so the formula degenerates; the limit is [n]Q = O for even n
    /// and Q itself for odd n, and that closed form is used directly.
    pub fn mul(&mut self, n: u64, q: &WeierstrassPoint) -> Result<WeierstrassPoint, EvalError> {
        let (u, v) = match q {
            WeierstrassPoint::Infinity => return Ok(WeierstrassPoint::Infinity),
            WeierstrassPoint::Affine { u, v } => (*u, *v),
        };
        if n == 0 {
            return Ok(WeierstrassPoint::Infinity);
        }
        if v == 0 {
            return Ok(if n % 2 == 0 { WeierstrassPoint::Infinity } else { *q });
        }
        let f = self.curve.field();
        let pn = self.psi(n, q)?;
        if pn.is_zero() {
            return Ok(WeierstrassPoint::Infinity);
        }
        let pm = self.psi(n - 1, q)?;
        let pp = self.psi(n + 1, q)?;
        let p2n = self.psi(2 * n, q)?;
        let (u, v) = (f.elem(u), f.elem(v));
        let _ = v;
        let un = u - pm * pp * (pn * pn).inverse().map_err(EvalError::Algebra)?;
        let vn = p2n * (f.elem(2) * pn.pow(4)).inverse().map_err(EvalError::Algebra)?;
        Ok(WeierstrassPoint::affine(un, vn))
    }
}

fn eval_rec(
    u: FieldElem,
    v: FieldElem,
    a4: FieldElem,
    a6: FieldElem,
    n: u64,
    memo: &mut HashMap<u64, FieldElem>,
) -> Result<FieldElem, EvalError> {
    if let Some(r) = memo.get(&n) {
        return Ok(*r);
    }
    let f = u.field();
    let c = |k: u64| f.elem(k);
    let val = match n {
        0 => f.zero(),
        1 => f.one(),
        2 => c(2) * v,
        3 => c(3) * u.pow(4) + c(6) * a4 * u.pow(2) + c(12) * a6 * u - a4 * a4,
        4 => {
            c(4) * v
                * (u.pow(6) + c(5) * a4 * u.pow(4) + c(20) * a6 * u.pow(3)
                    - c(5) * a4 * a4 * u.pow(2)
                    - c(4) * a4 * a6 * u
                    - a4.pow(3)
                    - c(8) * a6 * a6)
        }
        _ if n % 2 == 1 => {
            let m = (n - 1) / 2;
            let t2 = eval_rec(u, v, a4, a6, m + 2, memo)?;
            let t0 = eval_rec(u, v, a4, a6, m, memo)?;
            let tm = eval_rec(u, v, a4, a6, m - 1, memo)?;
            let tp = eval_rec(u, v, a4, a6, m + 1, memo)?;
            t2 * t0.pow(3) - tm * tp.pow(3)
        }
        _ => {
            let m = n / 2;
            let two_v = c(2) * v;
            if two_v.is_zero() {
                return Err(EvalError::ZeroDenominator);
            }
            let t0 = eval_rec(u, v, a4, a6, m, memo)?;
            let t2 = eval_rec(u, v, a4, a6, m + 2, memo)?;
            let tm1 = eval_rec(u, v, a4, a6, m - 1, memo)?;
            let tm2 = eval_rec(u, v, a4, a6, m - 2, memo)?;
            let tp1 = eval_rec(u, v, a4, a6, m + 1, memo)?;
            t0 * (t2 * tm1 * tm1 - tm2 * tp1 * tp1)
                .div(two_v)
                .map_err(EvalError::Algebra)?
        }
    };
    memo.insert(n, val);
    Ok(val)
}
