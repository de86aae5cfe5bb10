//! Scalar multiplication on the Edwards curve through division polynomials,
//! torsion characterization, and the cross-validation harness that ties the
//! symbolic and numeric sides together.
//!
//! Torsion tests need polynomial values at indices up to twice the group
//! order, far beyond what is worth holding symbolically, so this module
//! evaluates the defining recursion directly on field values with a
//! per-point memo. The divisions by powers of y+1 become field divisions
//! (y = -1, the order-2 point, gets its own closed chain: the divided term
//! always retains a factor of (y+1)^2 and drops out, leaving a recursion
//! over odd indices only). Consistency with the symbolic table is pinned by
//! tests at small indices.
//!
//! The order-2 landing rule in [`ed_mul_divpoly`] relies on (0,-1) being
//! the unique point of order 2: 2P = identity forces P = -P, so x = -x,
//! hence x = 0 (characteristic is odd) and y = -1 away from the identity.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{is_prime_u64, FieldElem, PrimeField};
use crate::curve::{EdwardsCurve, EdwardsPoint, EdwardsPreimage};
use crate::divpoly::{check_structure, gamma, k_exponent, m_exponent, DivPolyTable};
use crate::errors::{CurveError, EvalError};
use crate::funcfield;
use crate::weierstrass::WsDivTable;

/// Division-polynomial values at a fixed (a, d, y), memoized over the index.
#[derive(Debug, Clone)]
pub struct PsiValues {
    a: FieldElem,
    d: FieldElem,
    y0: FieldElem,
    memo: HashMap<u64, FieldElem>,
}

impl PsiValues {
    pub fn new(curve: &EdwardsCurve, y0: FieldElem) -> Self {
        PsiValues { a: curve.a(), d: curve.d(), y0, memo: HashMap::new() }
    }

    /// The value of the n-th polynomial at (a, d, y0). Total: y0 = -1 is
    /// served by the odd-index chain, everything else by the recursion with
    /// field division.
    pub fn tilde(&mut self, n: u64) -> FieldElem {
        if let Some(v) = self.memo.get(&n) {
            return *v;
        }
        let f = self.y0.field();
        let v = if self.y0 == -f.one() {
            self.tilde_at_minus_one(n)
        } else {
            self.tilde_generic(n)
        };
        self.memo.insert(n, v);
        v
    }

    fn tilde_generic(&mut self, n: u64) -> FieldElem {
        let f = self.y0.field();
        let (a, d, y) = (self.a, self.d, self.y0);
        let one = f.one();
        match n {
            0 => f.zero(),
            1 => one,
            2 => y + one,
            3 => {
                let two = f.elem(2);
                two * a * y + a - d * y.pow(4) - two * d * y.pow(3)
            }
            4 => {
                let two = f.elem(2);
                two * a * y * y + two * a * y - two * d * y.pow(6) - two * d * y.pow(5)
            }
            _ if n % 2 == 1 => {
                let r = (n - 1) / 2;
                let t = |s: &mut Self, i: u64| s.tilde(i);
                let (div_prod, plain) = if r % 2 == 0 {
                    (t(self, r + 2) * t(self, r).pow(3), t(self, r - 1) * t(self, r + 1).pow(3))
                } else {
                    (t(self, r - 1) * t(self, r + 1).pow(3), t(self, r + 2) * t(self, r).pow(3))
                };
                let mut front = f.elem(4) * (a - d * y * y).pow(2);
                if r % 4 == 0 || r % 4 == 3 {
                    front = front * (a - d);
                }
                let y1_sq = (y + one) * (y + one);
                let divided =
                    (front * div_prod).div(y1_sq).expect("y != -1 in this branch");
                if r % 2 == 0 {
                    divided - plain
                } else {
                    plain - divided
                }
            }
            _ => {
                let r = n / 2;
                let mut first = self.tilde(r + 2) * self.tilde(r - 1).pow(2);
                let mut second = self.tilde(r - 2) * self.tilde(r + 1).pow(2);
                if r % 4 == 1 {
                    first = first * (a - d);
                } else if r % 4 == 3 {
                    second = second * (a - d);
                }
                (self.tilde(r) * (first - second))
                    .div(y + one)
                    .expect("y != -1 in this branch")
            }
        }
    }

    /// At y = -1 every even index vanishes and the odd indices close over
    /// themselves: the (y+1)^2-divided product keeps a factor (y+1)^2, so
    /// only the undivided product survives.
    fn tilde_at_minus_one(&mut self, n: u64) -> FieldElem {
        let f = self.y0.field();
        if n % 2 == 0 {
            return f.zero();
        }
        match n {
            1 => f.one(),
            3 => self.d - self.a,
            _ => {
                let r = (n - 1) / 2;
                if r % 2 == 0 {
                    -(self.tilde(r - 1) * self.tilde(r + 1).pow(3))
                } else {
                    self.tilde(r + 2) * self.tilde(r).pow(3)
                }
            }
        }
    }
}

/// Values of the rational functions psi_n at a fixed point, through the
/// closed form with a shared [`PsiValues`] memo.
#[derive(Debug, Clone)]
pub struct PsiPointEval {
    vals: PsiValues,
    x0: FieldElem,
    a_minus_d: FieldElem,
    /// 2 (1 - y0); nonzero because the identity is excluded.
    two_one_minus_y: FieldElem,
}

impl PsiPointEval {
    /// The point must not be the identity (y = 1 makes every denominator
    /// vanish there).
    pub fn new(curve: &EdwardsCurve, at: &EdwardsPoint) -> Self {
        assert!(*at != curve.identity(), "psi_n is undefined at the identity");
        let f = curve.field();
        let (x0, y0) = curve.coords(at);
        PsiPointEval {
            vals: PsiValues::new(curve, y0),
            x0,
            a_minus_d: curve.a() - curve.d(),
            two_one_minus_y: f.elem(2) * (f.one() - y0),
        }
    }

    pub fn psi(&mut self, n: u64) -> Result<FieldElem, EvalError> {
        if gamma(n) == 1 && self.x0.is_zero() {
            return Err(EvalError::UndefinedAtPoint);
        }
        let f = self.x0.field();
        if n == 0 {
            return Ok(f.zero());
        }
        let mut val = self.a_minus_d.pow(k_exponent(n) as u64)
            * self.vals.tilde(n)
            * self
                .two_one_minus_y
                .pow(m_exponent(n) as u64)
                .inverse()
                .expect("y != 1");
        if gamma(n) == 1 {
            val = val * self.x0.inverse().expect("x != 0 checked");
        }
        Ok(val)
    }
}

/// [n]P through the division-polynomial formula.
///
/// The excluded points (0, 1) and (0, -1) are multiplied by their closed
/// forms; elsewhere a vanishing n-index value means [n]P is the identity, a
/// vanishing 2n-index value (with the n-index nonzero) means [n]P is the
/// unique order-2 point, and otherwise the formula applies with defensive
/// checks on both denominators.
pub fn ed_mul_divpoly(
    curve: &EdwardsCurve,
    p: &EdwardsPoint,
    n: u64,
) -> Result<EdwardsPoint, EvalError> {
    let f = curve.field();
    if n == 0 || *p == curve.identity() {
        return Ok(curve.identity());
    }
    if *p == curve.order_two_point() {
        return Ok(if n % 2 == 0 { curve.identity() } else { *p });
    }
    let (x0, y0) = curve.coords(p);
    let mut ev = PsiPointEval::new(curve, p);
    if ev.vals.tilde(n).is_zero() {
        return Ok(curve.identity());
    }
    if ev.vals.tilde(2 * n).is_zero() {
        return Ok(curve.order_two_point());
    }
    let _ = x0;
    let psi_n = ev.psi(n)?;
    let psi_prev = ev.psi(n - 1)?;
    let psi_next = ev.psi(n + 1)?;
    let psi_2n = ev.psi(2 * n)?;
    let amd = curve.a() - curve.d();
    let one = f.one();
    let phi = ((one + y0) * psi_n * psi_n).div(one - y0).expect("y != 1")
        - (f.elem(4) * psi_prev * psi_next).div(amd).expect("a != d");
    let omega = (f.elem(2) * psi_2n).div(amd * psi_n).expect("nonzero");
    let den_y = phi + psi_n * psi_n;
    if omega.is_zero() || den_y.is_zero() {
        return Err(EvalError::InternalInconsistency);
    }
    let x = (phi * psi_n).div(omega).expect("nonzero checked");
    let y = (phi - psi_n * psi_n).div(den_y).expect("nonzero checked");
    curve
        .point(x.value(), y.value())
        .map_err(|_| EvalError::InternalInconsistency)
}

/// Whether [n]P is the identity, decided by the division-polynomial value
/// at y_P alone. The identity itself is excluded.
pub fn is_n_torsion(curve: &EdwardsCurve, p: &EdwardsPoint, n: u64) -> bool {
    assert!(n >= 1);
    assert!(*p != curve.identity(), "the identity is excluded");
    let (_, y0) = curve.coords(p);
    PsiValues::new(curve, y0).tilde(n).is_zero()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointOrder {
    pub x: u64,
    pub y: u64,
    pub order: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TorsionMismatch {
    pub x: u64,
    pub y: u64,
    pub n: u64,
    pub poly_zero: bool,
    pub order_divides: bool,
}

/// Full verdict matrix of a torsion scan: for each non-identity point and
/// each index, "the polynomial vanishes" against "the order divides n".
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TorsionReport {
    pub p: u64,
    pub a: u64,
    pub d: u64,
    pub group_order: u64,
    pub n_max: u64,
    pub points: Vec<PointOrder>,
    pub mismatches: Vec<TorsionMismatch>,
}

impl TorsionReport {
    pub fn consistent(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Exhaustive torsion scan over all affine points. `n_max` defaults to
/// twice the group order.
pub fn torsion_scan(
    curve: &EdwardsCurve,
    n_max: Option<u64>,
    max_modulus: u64,
) -> Result<TorsionReport, CurveError> {
    let pts = curve.enumerate_points(max_modulus)?;
    let group_order = pts.len() as u64;
    let n_max = n_max.unwrap_or(2 * group_order);
    let mut points = Vec::new();
    let mut mismatches = Vec::new();
    for pt in &pts {
        let order =
            if *pt == curve.identity() { 1 } else { curve.order_of(pt)? };
        points.push(PointOrder { x: pt.x(), y: pt.y(), order });
        if *pt == curve.identity() {
            continue;
        }
        let (_, y0) = curve.coords(pt);
        let mut vals = PsiValues::new(curve, y0);
        for n in 1..=n_max {
            let poly_zero = vals.tilde(n).is_zero();
            let order_divides = n % order == 0;
            if poly_zero != order_divides {
                mismatches.push(TorsionMismatch {
                    x: pt.x(),
                    y: pt.y(),
                    n,
                    poly_zero,
                    order_divides,
                });
            }
        }
    }
    Ok(TorsionReport {
        p: curve.field().modulus(),
        a: curve.a().value(),
        d: curve.d().value(),
        group_order,
        n_max,
        points,
        mismatches,
    })
}

/// Curves used for the exhaustive scans: a a square and d a non-square, so
/// the affine addition law is complete and naive orders are well-defined.
pub const SCAN_CURVES: &[(u64, u64, u64)] = &[
    (5, 1, 2),
    (5, 4, 3),
    (7, 1, 3),
    (7, 2, 5),
    (11, 1, 2),
    (13, 1, 2),
    (13, 3, 5),
    (17, 1, 3),
    (19, 1, 2),
    (23, 1, 5),
    (29, 1, 2),
    (37, 1, 2),
    (97, 1, 5),
];

/// Parameters of a cross-validation run; everything that influences the
/// outcome is here, so a config plus a seed reproduces a report exactly.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CrosscheckConfig {
    pub seed: u64,
    pub prime_min: u64,
    pub prime_max: u64,
    /// Sampled (curve, point) pairs for the substitution identity; each is
    /// checked at every index up to `substitution_n_max`.
    pub substitution_points: usize,
    pub substitution_n_max: u64,
    pub mul_trials: usize,
    pub mul_n_max: u64,
    pub structure_n_max: u64,
    /// (p, n) pairs for the characteristic-p degree-drop check.
    pub char_degree_cases: Vec<(u64, u64)>,
    pub scan_curves: Vec<(u64, u64, u64)>,
    pub scan_max_modulus: u64,
}

impl CrosscheckConfig {
    /// The full verification run.
    pub fn default_full() -> Self {
        CrosscheckConfig {
            seed: 42,
            prime_min: 5,
            prime_max: 1009,
            substitution_points: 12,
            substitution_n_max: 20,
            mul_trials: 500,
            mul_n_max: 50,
            structure_n_max: 30,
            char_degree_cases: vec![(5, 20), (7, 28), (5, 40)],
            scan_curves: SCAN_CURVES.to_vec(),
            scan_max_modulus: 10_000,
        }
    }

    /// A reduced run for tight time budgets.
    pub fn quick() -> Self {
        CrosscheckConfig {
            seed: 42,
            prime_min: 5,
            prime_max: 97,
            substitution_points: 3,
            substitution_n_max: 12,
            mul_trials: 60,
            mul_n_max: 20,
            structure_n_max: 12,
            char_degree_cases: vec![(5, 20)],
            scan_curves: SCAN_CURVES[..4].to_vec(),
            scan_max_modulus: 10_000,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteOutcome {
    pub name: String,
    pub cases: u64,
    pub failures: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FailureDetail {
    pub suite: String,
    pub p: u64,
    pub a: u64,
    pub d: u64,
    pub point: Option<EdwardsPoint>,
    pub n: Option<u64>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CrosscheckReport {
    pub config: CrosscheckConfig,
    pub suites: Vec<SuiteOutcome>,
    pub passed: bool,
    pub first_failure: Option<FailureDetail>,
}

struct Recorder {
    suites: Vec<SuiteOutcome>,
    first_failure: Option<FailureDetail>,
}

impl Recorder {
    fn suite(&mut self, name: &str) {
        self.suites.push(SuiteOutcome { name: name.into(), cases: 0, failures: 0 });
    }

    fn case(&mut self, ok: bool, detail: impl FnOnce() -> FailureDetail) {
        let s = self.suites.last_mut().expect("suite started");
        s.cases += 1;
        if !ok {
            s.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(detail());
            }
        }
    }
}

fn sample_curve(
    rng: &mut ChaCha8Rng,
    field: PrimeField,
    complete: bool,
) -> EdwardsCurve {
    loop {
        let p = field.modulus();
        let a = rng.gen_range(1..p);
        let d = rng.gen_range(1..p);
        if a == d {
            continue;
        }
        if complete && (field.elem(a).legendre() != 1 || field.elem(d).legendre() != -1) {
            continue;
        }
        return EdwardsCurve::new(field, a, d).expect("validated");
    }
}

fn sample_point(
    rng: &mut ChaCha8Rng,
    curve: &EdwardsCurve,
    exclude_special: bool,
) -> Option<EdwardsPoint> {
    let f = curve.field();
    let p = f.modulus();
    for _ in 0..4 * p {
        let x = rng.gen_range(0..p);
        let xe = f.elem(x);
        let den = f.one() - curve.d() * xe * xe;
        if den.is_zero() {
            continue;
        }
        let rhs = (f.one() - curve.a() * xe * xe).div(den).expect("nonzero");
        let Some(r) = rhs.sqrt() else { continue };
        let y = if rng.gen_bool(0.5) { r } else { -r };
        let pt = curve.point(x, y.value()).expect("on curve");
        if exclude_special && (pt == curve.identity() || pt == curve.order_two_point()) {
            continue;
        }
        return Some(pt);
    }
    None
}

/// Runs the four oracle suites and aggregates pass/fail counts.
///
/// (i) the substitution identity between the Edwards-side rational
/// functions and the Weierstrass division polynomials; (ii) divpoly
/// multiplication against naive repeated addition and the Weierstrass
/// detour; (iii) the structural checks for every index up to the bound plus
/// the characteristic-p cases; (iv) exhaustive torsion scans.
pub fn crosscheck(config: &CrosscheckConfig, table: &mut DivPolyTable) -> CrosscheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let primes: Vec<u64> = (config.prime_min..=config.prime_max)
        .filter(|&x| x > 3 && is_prime_u64(x))
        .collect();
    let mut rec = Recorder { suites: Vec::new(), first_failure: None };

    rec.suite("substitution_identity");
    for _ in 0..config.substitution_points {
        let p = primes[rng.gen_range(0..primes.len())];
        let field = PrimeField::new(p).expect("prime");
        let curve = sample_curve(&mut rng, field, false);
        let Some(pt) = sample_point(&mut rng, &curve, true) else { continue };
        let mut wst = WsDivTable::new(curve.weierstrass());
        let q = curve.to_weierstrass(&pt);
        for n in 0..=config.substitution_n_max {
            let lhs = funcfield::psi_eval(table, &curve, n, &pt);
            let rhs = wst.psi(n, &q);
            let ok = matches!((&lhs, &rhs), (Ok(l), Ok(r)) if l == r);
            rec.case(ok, || FailureDetail {
                suite: "substitution_identity".into(),
                p,
                a: curve.a().value(),
                d: curve.d().value(),
                point: Some(pt),
                n: Some(n),
                lhs: format!("{lhs:?}"),
                rhs: format!("{rhs:?}"),
            });
        }
    }

    rec.suite("multiplication_equivalence");
    for _ in 0..config.mul_trials {
        let p = primes[rng.gen_range(0..primes.len())];
        let field = PrimeField::new(p).expect("prime");
        let curve = sample_curve(&mut rng, field, true);
        let Some(pt) = sample_point(&mut rng, &curve, false) else { continue };
        let n = rng.gen_range(1..=config.mul_n_max);
        let via_poly = ed_mul_divpoly(&curve, &pt, n);
        let via_naive = curve.scalar_mul_naive(&pt, n);
        let mut wst = WsDivTable::new(curve.weierstrass());
        let via_detour = wst
            .mul(n, &curve.to_weierstrass(&pt))
            .map(|q| curve.from_weierstrass(&q));
        let ok = match (&via_poly, &via_naive, &via_detour) {
            (Ok(x), Ok(y), Ok(EdwardsPreimage::Point(z))) => x == y && y == z,
            _ => false,
        };
        rec.case(ok, || FailureDetail {
            suite: "multiplication_equivalence".into(),
            p,
            a: curve.a().value(),
            d: curve.d().value(),
            point: Some(pt),
            n: Some(n),
            lhs: format!("{via_poly:?}"),
            rhs: format!("naive={via_naive:?} detour={via_detour:?}"),
        });
    }

    rec.suite("structure");
    let char_cases = config
        .char_degree_cases
        .iter()
        .map(|&(p, n)| (Some(p), n))
        .chain((1..=config.structure_n_max).map(|n| (None, n)));
    for (char_p, n) in char_cases {
        let outcome = check_structure(table, n, char_p);
        let ok = matches!(&outcome, Ok(r) if r.all_ok());
        rec.case(ok, || FailureDetail {
            suite: "structure".into(),
            p: char_p.unwrap_or(0),
            a: 0,
            d: 0,
            point: None,
            n: Some(n),
            lhs: format!("{outcome:?}"),
            rhs: "all structural checks pass".into(),
        });
    }

    rec.suite("torsion_scan");
    for &(p, a, d) in &config.scan_curves {
        let field = PrimeField::new(p).expect("prime");
        let curve = EdwardsCurve::new(field, a, d).expect("valid scan curve");
        let report = torsion_scan(&curve, None, config.scan_max_modulus);
        let ok = matches!(&report, Ok(r) if r.consistent());
        rec.case(ok, || FailureDetail {
            suite: "torsion_scan".into(),
            p,
            a,
            d,
            point: None,
            n: None,
            lhs: format!("{report:?}"),
            rhs: "no verdict mismatches".into(),
        });
    }

    let passed = rec.suites.iter().all(|s| s.failures == 0);
    CrosscheckReport {
        config: config.clone(),
        suites: rec.suites,
        passed,
        first_failure: rec.first_failure,
    }
}
