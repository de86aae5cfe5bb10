//! Command-line front end: polynomial emission, evaluation, scalar
//! multiplication, torsion scans, and the verification harness.
//!
//! Exit codes are a stable contract: 0 success, 2 usage error, 3 bad input
//! domain (e.g. a point off the curve), 4 verification failure, 5 resource
//! bound exceeded.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use edpoly::algebra::{Poly, PrimeField};
use edpoly::curve::EdwardsCurve;
use edpoly::divpoly::{m_exponent, profile, psi_json, DivPolyTable};
use edpoly::errors::CurveError;
use edpoly::torsion::{
    crosscheck, ed_mul_divpoly, torsion_scan, CrosscheckConfig, PsiPointEval, PsiValues,
};
use edpoly::YPoly;

const EXIT_USAGE: u8 = 2;
const EXIT_INPUT: u8 = 3;
const EXIT_VERIFY: u8 = 4;
const EXIT_RESOURCE: u8 = 5;

const ENUMERATION_LIMIT: u64 = 10_000;

#[derive(Parser)]
#[command(
    name = "edpoly",
    version,
    about = "Division polynomials for twisted Edwards curves a*x^2 + y^2 = 1 + d*x^2*y^2"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the n-th division polynomial with its structural profile
    Psi {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Evaluate the n-th division polynomial at (a, d, y) over F_p; with
    /// --x also the rational function psi_n at the point (x, y)
    Eval {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        a: u64,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        y: u64,
        #[arg(long)]
        x: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compute [n](x, y) through division polynomials
    Mul {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        a: u64,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        x: u64,
        #[arg(long)]
        y: u64,
        #[arg(long)]
        n: u64,
        /// Also run the repeated-addition oracle and report MATCH/MISMATCH
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Exhaustively scan a small curve: point orders against polynomial
    /// verdicts
    Torsion {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        a: u64,
        #[arg(long)]
        d: u64,
        /// Largest index to test (default: twice the group order)
        #[arg(long)]
        n_max: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the oracle cross-validation suites
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Bound for the structural suite (default 30; 12 with --quick)
        #[arg(long)]
        n_max: Option<u64>,
        /// Reduced configuration for tight time budgets
        #[arg(long)]
        quick: bool,
        /// Write the JSON report to this file
        #[arg(long)]
        out: Option<PathBuf>,
        /// Fault injection: corrupt one table entry before running; the
        /// harness must then fail
        #[arg(long, hide = true)]
        corrupt_table: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn field(p: u64) -> Result<PrimeField, Failure> {
    PrimeField::new(p)
        .map_err(|_| Failure::new(EXIT_USAGE, format!("--p {p}: must be a prime greater than 3")))
}

fn curve(p: u64, a: u64, d: u64) -> Result<EdwardsCurve, Failure> {
    let f = field(p)?;
    EdwardsCurve::new(f, a, d)
        .map_err(|_| Failure::new(EXIT_USAGE, "a and d must be distinct and non-zero"))
}

fn run(cmd: Cmd) -> Result<(), Failure> {
    match cmd {
        Cmd::Psi { n, format } => cmd_psi(n, format),
        Cmd::Eval { p, a, d, n, y, x, format } => cmd_eval(p, a, d, n, y, x, format),
        Cmd::Mul { p, a, d, x, y, n, verify, format } => {
            cmd_mul(p, a, d, x, y, n, verify, format)
        }
        Cmd::Torsion { p, a, d, n_max, format } => cmd_torsion(p, a, d, n_max, format),
        Cmd::Verify { seed, n_max, quick, out, corrupt_table, format } => {
            cmd_verify(seed, n_max, quick, out, corrupt_table, format)
        }
    }
}

/// Single-term polynomial holding just the given coefficient slot, for
/// rendering leading/trailing terms in the canonical format.
fn term_at(poly: &YPoly, deg: usize) -> YPoly {
    let mut coeffs = vec![edpoly::CoefPoly::zero(); deg + 1];
    coeffs[deg] = poly.coeff(deg);
    Poly::from_coeffs(coeffs)
}

fn cmd_psi(n: u64, format: Format) -> Result<(), Failure> {
    let mut table = DivPolyTable::new();
    let poly = table
        .poly(n)
        .map_err(|e| Failure::new(EXIT_USAGE, format!("construction failed: {e}")))?
        .clone();
    match format {
        Format::Json => {
            let j = psi_json(n, &poly);
            println!("{}", serde_json::to_string(&j).expect("serializable"));
        }
        Format::Text => {
            println!("psi_{n} = {poly}");
            let degree = match poly.degree() {
                Some(d) => d.to_string(),
                None => "-inf".to_string(),
            };
            println!("n={n} m={} k={} degree={degree}", m_exponent(n), edpoly::divpoly::k_exponent(n));
            if n >= 1 {
                let prof = profile(n);
                println!("delta={} epsilon={} gamma={}", prof.delta, prof.epsilon, prof.gamma);
            }
            if let Some(d) = poly.degree() {
                println!("leading = {}", term_at(&poly, d));
                if let Some((ord, _)) = poly.trailing() {
                    println!("trailing = {}", term_at(&poly, ord));
                }
            }
        }
    }
    Ok(())
}

fn cmd_eval(
    p: u64,
    a: u64,
    d: u64,
    n: u64,
    y: u64,
    x: Option<u64>,
    format: Format,
) -> Result<(), Failure> {
    let c = curve(p, a, d)?;
    let f = c.field();
    let mut vals = PsiValues::new(&c, f.elem(y));
    let tilde = vals.tilde(n);
    let psi_at_point = match x {
        None => None,
        Some(x) => {
            let pt = c
                .point(x, y)
                .map_err(|_| Failure::new(EXIT_INPUT, format!("({x}, {y}) is not on the curve")))?;
            if pt == c.identity() {
                return Err(Failure::new(EXIT_INPUT, "psi_n is undefined at the identity (0, 1)"));
            }
            let mut ev = PsiPointEval::new(&c, &pt);
            match ev.psi(n) {
                Ok(v) => Some(v.value()),
                Err(_) => {
                    return Err(Failure::new(
                        EXIT_INPUT,
                        "psi_n is undefined at x = 0 for even n",
                    ))
                }
            }
        }
    };
    match format {
        Format::Json => {
            let mut obj = serde_json::json!({
                "p": p, "a": a, "d": d, "n": n, "y": y,
                "psi_tilde": tilde.value(),
            });
            if let Some(v) = psi_at_point {
                obj["x"] = serde_json::json!(x.unwrap());
                obj["psi"] = serde_json::json!(v);
            }
            println!("{obj}");
        }
        Format::Text => {
            println!("psi_{n}(a={a}, d={d}, y={y}) = {tilde} (mod {p})");
            if let Some(v) = psi_at_point {
                println!("psi_{n} at ({} : {y}) = {v} (mod {p})", x.unwrap());
            }
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_mul(
    p: u64,
    a: u64,
    d: u64,
    x: u64,
    y: u64,
    n: u64,
    verify: bool,
    format: Format,
) -> Result<(), Failure> {
    let c = curve(p, a, d)?;
    let pt = c
        .point(x, y)
        .map_err(|_| Failure::new(EXIT_INPUT, format!("({x}, {y}) is not on the curve")))?;
    let result = ed_mul_divpoly(&c, &pt, n)
        .map_err(|e| Failure::new(EXIT_VERIFY, format!("multiplication failed: {e}")))?;
    let oracle = if verify {
        match c.scalar_mul_naive(&pt, n) {
            Ok(q) => Some(q),
            Err(CurveError::DenominatorZero) => {
                return Err(Failure::new(
                    EXIT_VERIFY,
                    "the repeated-addition oracle hit a vanishing denominator (d is a square)",
                ))
            }
            Err(e) => return Err(Failure::new(EXIT_VERIFY, format!("oracle failed: {e}"))),
        }
    } else {
        None
    };
    let verdict = oracle.map(|q| if q == result { "MATCH" } else { "MISMATCH" });
    match format {
        Format::Json => {
            let mut obj = serde_json::json!({
                "p": p, "a": a, "d": d, "n": n,
                "input": {"x": x, "y": y},
                "result": {"x": result.x(), "y": result.y()},
            });
            if let Some(q) = oracle {
                obj["oracle"] = serde_json::json!({"x": q.x(), "y": q.y()});
                obj["verdict"] = serde_json::json!(verdict.unwrap());
            }
            println!("{obj}");
        }
        Format::Text => {
            println!("[{n}]({x} : {y}) = {result}");
            if let Some(q) = oracle {
                println!("naive oracle: {q}  {}", verdict.unwrap());
            }
        }
    }
    if verdict == Some("MISMATCH") {
        return Err(Failure::new(EXIT_VERIFY, "divpoly and naive results disagree"));
    }
    Ok(())
}

fn cmd_torsion(
    p: u64,
    a: u64,
    d: u64,
    n_max: Option<u64>,
    format: Format,
) -> Result<(), Failure> {
    let c = curve(p, a, d)?;
    let report = torsion_scan(&c, n_max, ENUMERATION_LIMIT).map_err(|e| match e {
        CurveError::FieldTooLarge => Failure::new(
            EXIT_RESOURCE,
            format!("p = {p} is too large to enumerate (limit {ENUMERATION_LIMIT})"),
        ),
        other => Failure::new(EXIT_VERIFY, format!("scan failed: {other}")),
    })?;
    match format {
        Format::Json => println!("{}", serde_json::to_string(&report).expect("serializable")),
        Format::Text => {
            println!(
                "curve p={} a={} d={}: {} points, scanning n <= {}",
                report.p, report.a, report.d, report.group_order, report.n_max
            );
            for pt in &report.points {
                let bad = report.mismatches.iter().filter(|m| m.x == pt.x && m.y == pt.y).count();
                let status = if bad == 0 { "ok" } else { "MISMATCH" };
                println!("({} : {}) order={} {}", pt.x, pt.y, pt.order, status);
            }
            println!(
                "verdicts: {}",
                if report.consistent() { "all consistent" } else { "MISMATCHES FOUND" }
            );
        }
    }
    if !report.consistent() {
        return Err(Failure::new(EXIT_VERIFY, "torsion verdicts disagree with point orders"));
    }
    Ok(())
}

fn cmd_verify(
    seed: u64,
    n_max: Option<u64>,
    quick: bool,
    out: Option<PathBuf>,
    corrupt_table: bool,
    format: Format,
) -> Result<(), Failure> {
    let mut config =
        if quick { CrosscheckConfig::quick() } else { CrosscheckConfig::default_full() };
    config.seed = seed;
    if let Some(n) = n_max {
        config.structure_n_max = n;
    }
    let mut table = DivPolyTable::new();
    if corrupt_table {
        let flipped = -table
            .poly(3)
            .map_err(|e| Failure::new(EXIT_VERIFY, format!("table build failed: {e}")))?;
        table.override_entry(3, flipped);
    }
    let report = crosscheck(&config, &mut table);
    if let Some(path) = &out {
        let body = serde_json::to_string_pretty(&report).expect("serializable");
        std::fs::write(path, body)
            .map_err(|e| Failure::new(EXIT_VERIFY, format!("cannot write {}: {e}", path.display())))?;
    }
    match format {
        Format::Json => println!("{}", serde_json::to_string(&report).expect("serializable")),
        Format::Text => {
            for s in &report.suites {
                let status = if s.failures == 0 { "pass" } else { "FAIL" };
                println!("{:<28} {:>6} cases  {:>4} failures  {status}", s.name, s.cases, s.failures);
            }
            if let Some(f) = &report.first_failure {
                println!(
                    "first failure: suite={} p={} a={} d={} point={:?} n={:?}",
                    f.suite, f.p, f.a, f.d, f.point, f.n
                );
                println!("  lhs: {}", f.lhs);
                println!("  rhs: {}", f.rhs);
            }
            println!("overall: {}", if report.passed { "PASS" } else { "FAIL" });
        }
    }
    if !report.passed {
        return Err(Failure::new(EXIT_VERIFY, "cross-validation failed"));
    }
    Ok(())
}
