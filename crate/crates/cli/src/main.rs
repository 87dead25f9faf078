//! Command-line front end: single-trinomial analysis, polygon rendering,
//! theorem certification, and congruence-family scans.
//!
//! Exit codes: 0 = a definite verdict (or a completed rendering/scan),
//! 2 = inconclusive, 3 = input error.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::thread;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use num_bigint::BigInt;

use trinogen::intarith::is_prime;
use trinogen::monogenity::{
    analyze, certify_family, certify_mono, common_index_divisor_test, DivisorOutcome,
    FamilyTable, IndexDivisorWitness, MonoParams, PrimeReport,
};
use trinogen::newton::{phi_index, NewtonPolygon};
use trinogen::ore::{build_order_two, ore_analysis, LocalFactorAnalysis, SideAnalysis};
use trinogen::report::{render_json, render_text, REPORT_SCHEMA};
use trinogen::zpoly::{phi_expansion, IntPoly, Trinomial};
use trinogen::Error;

const EXIT_VERDICT: u8 = 0;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_INPUT: u8 = 3;

/// Environment variable overriding the scan worker count.
const WORKERS_ENV: &str = "TRINOGEN_WORKERS";

#[derive(Parser)]
#[command(
    name = "trinogen",
    version,
    about = "Decides monogenity questions for trinomial number fields x^n + ax + b"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one trinomial: index-divisor witnesses, family clauses,
    /// maximality, and generator certification
    Analyze {
        /// Degree n of x^n + ax + b
        n: u32,
        /// Linear coefficient a
        #[arg(allow_hyphen_values = true)]
        a: String,
        /// Constant coefficient b
        #[arg(allow_hyphen_values = true)]
        b: String,
        /// Restrict to the index-divisor test at this prime only
        #[arg(long)]
        prime: Option<u64>,
        /// Emit the versioned JSON report instead of text
        #[arg(long)]
        json: bool,
        /// Append the full analysis transcript
        #[arg(long)]
        verbose: bool,
    },
    /// Render the phi-adic Newton polygons of a trinomial at a prime
    Polygon {
        /// Degree n of x^n + ax + b
        n: u32,
        /// Linear coefficient a
        #[arg(allow_hyphen_values = true)]
        a: String,
        /// Constant coefficient b
        #[arg(allow_hyphen_values = true)]
        b: String,
        /// The prime p
        #[arg(long)]
        prime: u64,
        /// Explicit phi as comma-separated integer coefficients, constant
        /// term first (default: one polygon per repeated factor mod p)
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        phi: Option<Vec<i64>>,
        /// Also render second-order polygons where residual factors repeat
        #[arg(long)]
        second_order: bool,
    },
    /// Check one theorem against a trinomial and cross-check with the engine
    Certify {
        /// Theorem identifier: mono, dp^r, 3^r, dn1, dn2, corn11, corn12, d51, d61
        theorem: String,
        /// Degree n of x^n + ax + b
        n: u32,
        /// Linear coefficient a
        #[arg(allow_hyphen_values = true)]
        a: String,
        /// Constant coefficient b
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Scan a coefficient grid from a spec file (key = value lines)
    Scan {
        /// Spec file: n, a, b (values or lo..hi ranges), optional modulus,
        /// pairs, theorem, workers, output
        #[arg(long)]
        spec: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e)
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) =>
        {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(EXIT_INPUT);
        }
    };
    let result = match cli.command {
        Command::Analyze { n, a, b, prime, json, verbose } => {
            cmd_analyze(n, &a, &b, prime, json, verbose)
        }
        Command::Polygon { n, a, b, prime, phi, second_order } => {
            cmd_polygon(n, &a, &b, prime, phi.as_deref(), second_order)
        }
        Command::Certify { theorem, n, a, b } => cmd_certify(&theorem, n, &a, &b),
        Command::Scan { spec } => cmd_scan(&spec),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn parse_trinomial(n: u32, a: &str, b: &str) -> Result<Trinomial, String> {
    let a: BigInt = a.parse().map_err(|_| format!("invalid integer '{a}'"))?;
    let b: BigInt = b.parse().map_err(|_| format!("invalid integer '{b}'"))?;
    Trinomial::new(n, a, b).map_err(|e| e.to_string())
}

fn compact_witness(w: &IndexDivisorWitness) -> String {
    format!(
        "p={}:P_{}={}>N_{}({})={}",
        w.p, w.residue_degree, w.primes_above, w.p, w.residue_degree, w.available
    )
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

fn cmd_analyze(
    n: u32,
    a: &str,
    b: &str,
    prime: Option<u64>,
    json: bool,
    verbose: bool,
) -> Result<u8, String> {
    let t = parse_trinomial(n, a, b)?;
    if let Some(p) = prime {
        return analyze_single_prime(&t, p, json, verbose);
    }
    let verdict = match analyze(&t) {
        Ok(v) => v,
        Err(Error::UnsupportedShape(msg)) => {
            eprintln!("inconclusive: {msg}");
            return Ok(EXIT_INCONCLUSIVE);
        }
        Err(e) => return Err(e.to_string()),
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&render_json(&verdict)).expect("valid json"));
    } else {
        print!("{}", render_text(&verdict, verbose));
    }
    Ok(if verdict.status.is_decided() { EXIT_VERDICT } else { EXIT_INCONCLUSIVE })
}

fn analyze_single_prime(t: &Trinomial, p: u64, json: bool, verbose: bool) -> Result<u8, String> {
    if !is_prime(p) {
        return Err(format!("{p} is not prime"));
    }
    let report = match common_index_divisor_test(&t.to_poly(), p) {
        Ok(r) => r,
        Err(Error::UnsupportedShape(msg)) if msg.contains("divides the polynomial exactly") => {
            return Err(format!("reducible: {msg}"));
        }
        Err(e) => return Err(e.to_string()),
    };
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&prime_report_json(t, &report)).expect("valid json")
        );
    } else {
        print!("{}", prime_report_text(t, &report, verbose));
    }
    Ok(match report.outcome {
        DivisorOutcome::Witness(_) => EXIT_VERDICT,
        _ => EXIT_INCONCLUSIVE,
    })
}

fn prime_report_text(t: &Trinomial, report: &PrimeReport, verbose: bool) -> String {
    let mut out = String::new();
    out.push_str("report: trinogen.prime/1\n");
    out.push_str(&format!("trinomial: {t}\n"));
    out.push_str(&format!("prime: {}\n", report.p));
    out.push_str(&format!("shape: {}\n", report.analysis.shape));
    out.push_str(&format!("census: {}\n", report.census));
    out.push_str(&format!("disc-valuation: {}\n", report.analysis.ore.disc_valuation));
    out.push_str(&format!("index-lower-bound: {}\n", report.analysis.ore.index_lower_bound));
    out.push_str(&format!("outcome: {}\n", report.outcome));
    if verbose {
        out.push_str("primes:\n");
        for w in &report.analysis.witnesses {
            out.push_str(&format!(
                "  e={} f={} order={} phi={} slope={} residual={}\n",
                w.e, w.f, w.order, w.phi, w.slope, w.residual_factor
            ));
        }
        for diag in &report.analysis.shape.diagnostics {
            out.push_str(&format!("note: {diag}\n"));
        }
    }
    out
}

fn prime_report_json(t: &Trinomial, report: &PrimeReport) -> serde_json::Value {
    let shape: Vec<serde_json::Value> =
        report.analysis.shape.primes.iter().map(|&(e, f)| serde_json::json!([e, f])).collect();
    let outcome = match &report.outcome {
        DivisorOutcome::Witness(_) => "witness",
        DivisorOutcome::NoWitness => "no-witness",
        DivisorOutcome::Incomplete => "incomplete",
    };
    let witness = if let DivisorOutcome::Witness(w) = &report.outcome {
        serde_json::json!({
            "p": w.p, "m": w.residue_degree, "Pm": w.primes_above,
            "Npm": w.available.to_string(),
        })
    } else {
        serde_json::Value::Null
    };
    serde_json::json!({
        "schema": "trinogen.prime/1",
        "trinomial": {
            "n": t.n(), "a": t.a().to_string(), "b": t.b().to_string(),
            "display": t.to_string(),
        },
        "p": report.p,
        "shape": shape,
        "complete": report.analysis.shape.complete,
        "disc_valuation": report.analysis.ore.disc_valuation,
        "index_lower_bound": report.analysis.ore.index_lower_bound,
        "outcome": outcome,
        "witness": witness,
    })
}

// ---------------------------------------------------------------------------
// polygon
// ---------------------------------------------------------------------------

fn points_line(polygon: &NewtonPolygon) -> String {
    polygon
        .points()
        .iter()
        .map(|pt| format!("({},{})", pt.i, pt.u))
        .collect::<Vec<_>>()
        .join(" ")
}

fn vertices_line(polygon: &NewtonPolygon) -> String {
    polygon
        .vertices()
        .iter()
        .map(|pt| format!("({},{})", pt.i, pt.u))
        .collect::<Vec<_>>()
        .join(" ")
}

fn factors_line(factors: &[(trinogen::fqpoly::FqPoly, u32)]) -> String {
    factors
        .iter()
        .map(|(g, m)| if *m == 1 { format!("({g})") } else { format!("({g})^{m}") })
        .collect::<Vec<_>>()
        .join(" ")
}

fn push_polygon_block(out: &mut String, polygon: &NewtonPolygon, indent: &str) {
    out.push_str(&format!("{indent}points: {}\n", points_line(polygon)));
    out.push_str(&format!("{indent}vertices: {}\n", vertices_line(polygon)));
    for line in polygon.render_ascii().lines() {
        out.push_str(&format!("{indent}  {line}\n"));
    }
}

fn push_side_block(out: &mut String, side: &SideAnalysis, indent: &str) {
    out.push_str(&format!("{indent}side: {}\n", side.side));
    out.push_str(&format!("{indent}  residual: {}\n", side.residual.poly));
    out.push_str(&format!("{indent}  factors: {}\n", factors_line(&side.factors)));
}

fn cmd_polygon(
    n: u32,
    a: &str,
    b: &str,
    p: u64,
    phi: Option<&[i64]>,
    second_order: bool,
) -> Result<u8, String> {
    let t = parse_trinomial(n, a, b)?;
    if !is_prime(p) {
        return Err(format!("{p} is not prime"));
    }
    let f = t.to_poly();
    let mut out = String::new();
    out.push_str("polygon: trinogen.polygon/1\n");
    out.push_str(&format!("trinomial: {t}\n"));
    out.push_str(&format!("prime: {p}\n"));

    if let Some(coeffs) = phi {
        let lift = IntPoly::from_i64(coeffs);
        if !lift.is_monic() || lift.degree().unwrap_or(0) == 0 {
            return Err(format!("phi must be monic and non-constant, got {lift}"));
        }
        let fbar = f.reduce(p).map_err(|e| e.to_string())?;
        let phibar = lift.reduce(p).map_err(|e| e.to_string())?;
        if !fbar.rem(&phibar).map_err(|e| e.to_string())?.is_zero() {
            println!("{out}phi: {lift}");
            println!("{} does not divide the trinomial modulo {p}", phibar.render("x"));
            return Ok(EXIT_INCONCLUSIVE);
        }
        let analysis = analyze_lift(&f, p, &lift)?;
        push_lift_section(&mut out, &analysis, p, &f, second_order)?;
    } else {
        let analysis = ore_analysis(&f, p).map_err(|e| e.to_string())?;
        for detail in &analysis.details {
            push_lift_section(&mut out, detail, p, &f, second_order)?;
        }
        out.push_str(&format!("index-lower-bound: {}\n", analysis.index_lower_bound));
    }
    print!("{out}");
    Ok(EXIT_VERDICT)
}

/// First-order data for one explicit lift (mirrors the per-factor analysis
/// the engine performs on auto-selected lifts).
fn analyze_lift(f: &IntPoly, p: u64, lift: &IntPoly) -> Result<LocalFactorAnalysis, String> {
    let fbar = f.reduce(p).map_err(|e| e.to_string())?;
    let phibar = lift.reduce(p).map_err(|e| e.to_string())?;
    let mut mult = 0u32;
    let mut rest = fbar;
    loop {
        let (q, r) = rest.divmod(&phibar).map_err(|e| e.to_string())?;
        if !r.is_zero() {
            break;
        }
        mult += 1;
        rest = q;
    }
    let analysis = ore_analysis(f, p).map_err(|e| e.to_string())?;
    if let Some(found) =
        analysis.details.into_iter().find(|d| d.lift == *lift)
    {
        return Ok(found);
    }
    // explicit lift differing from the engine's symmetric choice: rebuild
    let development = phi_expansion(f, lift, p).map_err(|e| e.to_string())?;
    let points = trinogen::newton::development_points(&development.coefficients, p)
        .map_err(|e| e.to_string())?;
    let polygon = trinogen::newton::principal_polygon(&points);
    let deg = lift.degree().unwrap_or(1) as u64;
    let index = phi_index(&polygon, deg).map_err(|e| e.to_string())?;
    let mut sides = Vec::new();
    for side in polygon.sides() {
        let residual =
            trinogen::newton::residual_polynomial(lift, &development.coefficients, p, side)
                .map_err(|e| e.to_string())?;
        let factors = residual.poly.factor().map_err(|e| e.to_string())?;
        sides.push(SideAnalysis { side: *side, residual, factors });
    }
    Ok(LocalFactorAnalysis {
        factor: phibar,
        multiplicity: mult,
        lift: lift.clone(),
        polygon,
        sides,
        index,
        regular: true,
        exact_divisor: false,
    })
}

fn push_lift_section(
    out: &mut String,
    detail: &LocalFactorAnalysis,
    p: u64,
    f: &IntPoly,
    second_order: bool,
) -> Result<(), String> {
    out.push_str(&format!(
        "factor: {} (multiplicity {})\n",
        detail.factor.render("x"),
        detail.multiplicity
    ));
    out.push_str(&format!("phi: {}\n", detail.lift));
    if detail.exact_divisor {
        out.push_str("note: the lift divides the trinomial exactly; no polygon\n");
        return Ok(());
    }
    push_polygon_block(out, &detail.polygon, "");
    for side in &detail.sides {
        push_side_block(out, side, "");
    }
    out.push_str(&format!("index: {}\n", detail.index));
    if second_order {
        let mut rendered = false;
        for side in &detail.sides {
            for (psi, mult) in &side.factors {
                if *mult < 2 {
                    continue;
                }
                rendered = true;
                out.push_str(&format!(
                    "second-order: phi={} slope={} residual-factor={} multiplicity={}\n",
                    detail.lift,
                    side.side.slope,
                    psi,
                    mult
                ));
                match build_order_two(f, p, &detail.lift, &side.side, psi, *mult) {
                    Ok(t2) => {
                        out.push_str(&format!("  phi2: {}\n", t2.phi2));
                        out.push_str(&format!("  phi2-valuation: {}\n", t2.phi2_valuation));
                        push_polygon_block(out, &t2.polygon, "  ");
                        for res in &t2.residuals {
                            out.push_str(&format!("  side: {}\n", res.side));
                            out.push_str(&format!("    residual: {}\n", res.poly));
                            out.push_str(&format!("    factors: {}\n", factors_line(&res.factors)));
                        }
                    }
                    Err(e) => {
                        out.push_str(&format!("  unavailable: {e}\n"));
                    }
                }
            }
        }
        if !rendered {
            out.push_str("second-order: not applicable (all residual factors are simple)\n");
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// certify
// ---------------------------------------------------------------------------

fn cmd_certify(theorem: &str, n: u32, a: &str, b: &str) -> Result<u8, String> {
    let t = parse_trinomial(n, a, b)?;
    let mut out = String::new();
    out.push_str("certify: trinogen.certify/1\n");
    out.push_str(&format!("theorem: {theorem}\n"));
    out.push_str(&format!("trinomial: {t}\n"));
    if theorem == "mono" {
        let params = match MonoParams::from_trinomial(&t) {
            Ok(p) => p,
            Err(e) => {
                out.push_str(&format!("pattern: does not apply ({e})\n"));
                out.push_str("verdict: inconclusive\n");
                print!("{out}");
                return Ok(EXIT_INCONCLUSIVE);
            }
        };
        out.push_str(&format!(
            "parameters: p={} r={} v={} u={} a={} b={}\n",
            params.p, params.r, params.v, params.u, params.a, params.b
        ));
        match certify_mono(&params) {
            Ok(cert) => {
                out.push_str(&format!("generator: {}\n", cert.generator()));
                out.push_str(&format!("exponents: ({}, {})\n", cert.x, cert.y));
                out.push_str(&format!("minimal-polynomial: {}\n", cert.minimal_polynomial));
                out.push_str(&format!(
                    "disc-valuation: {} -> {}\n",
                    cert.disc_valuation_f, cert.disc_valuation_eta
                ));
                out.push_str("verdict: monogenic\n");
                print!("{out}");
                Ok(EXIT_VERDICT)
            }
            Err(e) => {
                out.push_str(&format!("certificate-failed: {e}\n"));
                out.push_str("verdict: inconclusive\n");
                print!("{out}");
                Ok(EXIT_INCONCLUSIVE)
            }
        }
    } else {
        let table = FamilyTable::parse(theorem).ok_or_else(|| {
            format!(
                "unknown theorem '{theorem}' (expected one of: mono, dp^r, 3^r, dn1, dn2, \
                 corn11, corn12, d51, d61)"
            )
        })?;
        let cert = certify_family(&t, table).map_err(|e| e.to_string())?;
        match &cert.clause {
            Some(m) => {
                out.push_str(&format!("clause: {}\n", m.clause));
                out.push_str(&format!("prime: {}\n", m.p));
                out.push_str(&format!("condition: {}\n", m.description));
            }
            None => out.push_str("clause: none\n"),
        }
        for note in &cert.notes {
            out.push_str(&format!("note: {note}\n"));
        }
        let code = match (cert.clause.is_some(), cert.engine_confirms) {
            (true, Some(true)) => {
                out.push_str("verdict: not monogenic (engine confirmed)\n");
                EXIT_VERDICT
            }
            (true, Some(false)) => {
                out.push_str("verdict: inconclusive (clause fired; engine found no witness)\n");
                EXIT_INCONCLUSIVE
            }
            (true, None) => {
                out.push_str("verdict: inconclusive (engine could not complete the shape)\n");
                EXIT_INCONCLUSIVE
            }
            (false, _) => {
                out.push_str("verdict: inconclusive (no clause fired)\n");
                EXIT_INCONCLUSIVE
            }
        };
        print!("{out}");
        Ok(code)
    }
}

// ---------------------------------------------------------------------------
// scan
// ---------------------------------------------------------------------------

struct ScanSpec {
    n: (u32, u32),
    a: (i64, i64),
    b: (i64, i64),
    modulus: Option<u64>,
    pairs: Vec<(u64, u64)>,
    theorem: Option<FamilyTable>,
    workers: Option<usize>,
    output: Option<PathBuf>,
}

fn parse_range_i64(s: &str) -> Result<(i64, i64), String> {
    if let Some((lo, hi)) = s.split_once("..") {
        let lo = lo.trim().parse().map_err(|_| format!("invalid integer '{lo}'"))?;
        let hi = hi.trim().parse().map_err(|_| format!("invalid integer '{hi}'"))?;
        Ok((lo, hi))
    } else {
        let v = s.trim().parse().map_err(|_| format!("invalid integer '{s}'"))?;
        Ok((v, v))
    }
}

fn parse_range_u32(s: &str) -> Result<(u32, u32), String> {
    let (lo, hi) = parse_range_i64(s)?;
    let lo = u32::try_from(lo).map_err(|_| format!("degree {lo} out of range"))?;
    let hi = u32::try_from(hi).map_err(|_| format!("degree {hi} out of range"))?;
    Ok((lo, hi))
}

fn parse_pairs(s: &str) -> Result<Vec<(u64, u64)>, String> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = Vec::new();
    for part in compact.split("),(") {
        let part = part.trim_start_matches('(').trim_end_matches(')');
        let (x, y) = part
            .split_once(',')
            .ok_or_else(|| format!("invalid residue pair '{part}'"))?;
        let x = x.parse().map_err(|_| format!("invalid residue '{x}'"))?;
        let y = y.parse().map_err(|_| format!("invalid residue '{y}'"))?;
        out.push((x, y));
    }
    Ok(out)
}

fn parse_scan_spec(text: &str) -> Result<ScanSpec, String> {
    let mut keys: BTreeMap<String, String> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("spec line {}: expected 'key = value'", idx + 1))?;
        if keys.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
            return Err(format!("spec line {}: duplicate key '{}'", idx + 1, k.trim()));
        }
    }
    let take = |k: &str| keys.get(k).cloned();
    let n = parse_range_u32(&take("n").ok_or("spec is missing 'n'")?)?;
    let a = parse_range_i64(&take("a").ok_or("spec is missing 'a'")?)?;
    let b = parse_range_i64(&take("b").ok_or("spec is missing 'b'")?)?;
    if n.0 < 2 {
        return Err("degree must be at least 2".into());
    }
    let modulus = match take("modulus") {
        Some(v) => {
            let m: u64 = v.parse().map_err(|_| format!("invalid modulus '{v}'"))?;
            if m == 0 {
                return Err("modulus must be positive".into());
            }
            Some(m)
        }
        None => None,
    };
    let pairs = match take("pairs") {
        Some(v) => {
            if modulus.is_none() {
                return Err("'pairs' requires 'modulus'".into());
            }
            parse_pairs(&v)?
        }
        None => Vec::new(),
    };
    let theorem = match take("theorem") {
        Some(v) => Some(
            FamilyTable::parse(&v).ok_or_else(|| format!("unknown theorem '{v}' in spec"))?,
        ),
        None => None,
    };
    let workers = match take("workers") {
        Some(v) => Some(v.parse().map_err(|_| format!("invalid worker count '{v}'"))?),
        None => None,
    };
    let output = take("output").map(PathBuf::from);
    let known = ["n", "a", "b", "modulus", "pairs", "theorem", "workers", "output"];
    for k in keys.keys() {
        if !known.contains(&k.as_str()) {
            return Err(format!("unknown spec key '{k}'"));
        }
    }
    Ok(ScanSpec { n, a, b, modulus, pairs, theorem, workers, output })
}

fn spec_echo(spec: &ScanSpec) -> String {
    let range_u = |(lo, hi): (u32, u32)| {
        if lo == hi { format!("{lo}") } else { format!("{lo}..{hi}") }
    };
    let range_i = |(lo, hi): (i64, i64)| {
        if lo == hi { format!("{lo}") } else { format!("{lo}..{hi}") }
    };
    let mut parts = vec![
        format!("n={}", range_u(spec.n)),
        format!("a={}", range_i(spec.a)),
        format!("b={}", range_i(spec.b)),
    ];
    if let Some(m) = spec.modulus {
        parts.push(format!("modulus={m}"));
    }
    if !spec.pairs.is_empty() {
        let pairs = spec
            .pairs
            .iter()
            .map(|&(x, y)| format!("({x},{y})"))
            .collect::<Vec<_>>()
            .join(",");
        parts.push(format!("pairs={pairs}"));
    }
    if let Some(t) = spec.theorem {
        parts.push(format!("theorem={t}"));
    }
    parts.join(" ")
}

struct RowOutcome {
    line: String,
    counters: Vec<String>,
}

fn scan_row(n: u32, a: i64, b: i64, theorem: Option<FamilyTable>) -> RowOutcome {
    let t = Trinomial::new(n, BigInt::from(a), BigInt::from(b))
        .expect("grid rows are valid trinomials");
    let theorem_suffix = |field: Option<String>| match field {
        Some(s) => format!(" {s}"),
        None => String::new(),
    };
    match analyze(&t) {
        Ok(v) => {
            let mut counters = vec![format!("status {}", v.status)];
            let clauses = if v.clauses.is_empty() {
                "-".to_string()
            } else {
                v.clauses
                    .iter()
                    .map(|c| {
                        let key = format!("{}({})", c.table, c.clause);
                        counters.push(format!("clause {key}"));
                        key
                    })
                    .collect::<Vec<_>>()
                    .join(",")
            };
            let witness =
                v.witnesses.first().map(compact_witness).unwrap_or_else(|| "-".to_string());
            let theorem_field = theorem.map(|table| match certify_family(&t, table) {
                Ok(cert) => match (&cert.clause, cert.engine_confirms) {
                    (Some(m), Some(true)) => {
                        let key = format!("{table}({})", m.clause);
                        counters.push(format!("theorem {key} confirmed"));
                        format!("{key}=confirmed")
                    }
                    (Some(m), Some(false)) => {
                        let key = format!("{table}({})", m.clause);
                        counters.push(format!("theorem {key} refuted"));
                        format!("{key}=refuted")
                    }
                    (Some(m), None) => {
                        let key = format!("{table}({})", m.clause);
                        counters.push(format!("theorem {key} unresolved"));
                        format!("{key}=unresolved")
                    }
                    (None, _) => {
                        counters.push(format!("theorem {table} none"));
                        "none".to_string()
                    }
                },
                Err(_) => {
                    counters.push(format!("theorem {table} error"));
                    "error".to_string()
                }
            });
            RowOutcome {
                line: format!(
                    "row: {n} {a} {b} {} {clauses} {witness}{}",
                    v.status,
                    theorem_suffix(theorem_field)
                ),
                counters,
            }
        }
        Err(e) => RowOutcome {
            line: format!(
                "row: {n} {a} {b} rejected - -{} # {e}",
                theorem_suffix(theorem.map(|_| "-".to_string()))
            ),
            counters: vec!["status rejected".to_string()],
        },
    }
}

fn worker_count(spec: &ScanSpec, items: usize) -> usize {
    let requested = std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .or(spec.workers)
        .unwrap_or_else(|| thread::available_parallelism().map(usize::from).unwrap_or(1));
    requested.clamp(1, items.max(1))
}

fn cmd_scan(path: &PathBuf) -> Result<u8, String> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read spec {}: {e}", path.display()))?;
    let spec = parse_scan_spec(&text)?;

    let keep = |a: i64, b: i64| -> bool {
        match spec.modulus {
            None => true,
            Some(m) => {
                if spec.pairs.is_empty() {
                    true
                } else {
                    let ra = a.rem_euclid(m as i64) as u64;
                    let rb = b.rem_euclid(m as i64) as u64;
                    spec.pairs.iter().any(|&(x, y)| x == ra && y == rb)
                }
            }
        }
    };
    let mut items: Vec<(u32, i64, i64)> = Vec::new();
    let mut skipped_zero_b = 0u64;
    for n in spec.n.0..=spec.n.1 {
        for a in spec.a.0..=spec.a.1 {
            for b in spec.b.0..=spec.b.1 {
                if !keep(a, b) {
                    continue;
                }
                if b == 0 {
                    skipped_zero_b += 1;
                    continue;
                }
                items.push((n, a, b));
            }
        }
    }

    let mut sink: BufWriter<Box<dyn Write>> = match &spec.output {
        Some(p) => BufWriter::new(Box::new(
            fs::File::create(p).map_err(|e| format!("cannot create {}: {e}", p.display()))?,
        )),
        None => BufWriter::new(Box::new(io::stdout())),
    };
    let emit = |sink: &mut BufWriter<Box<dyn Write>>, line: &str| -> Result<(), String> {
        writeln!(sink, "{line}").map_err(|e| format!("write failed: {e}"))
    };

    emit(&mut sink, "scan: trinogen.scan/1")?;
    emit(&mut sink, &format!("spec: {}", spec_echo(&spec)))?;
    let theorem_col = if spec.theorem.is_some() { " theorem" } else { "" };
    emit(&mut sink, &format!("columns: n a b status clauses witness{theorem_col}"))?;

    let workers = worker_count(&spec, items.len());
    let next = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel::<(usize, RowOutcome)>();
    let mut counters: BTreeMap<String, u64> = BTreeMap::new();
    let mut rows = 0u64;
    let mut io_error: Option<String> = None;

    thread::scope(|scope| {
        for _ in 0..workers {
            let tx = tx.clone();
            let items = &items;
            let next = &next;
            let theorem = spec.theorem;
            scope.spawn(move || loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let (n, a, b) = items[i];
                if tx.send((i, scan_row(n, a, b, theorem))).is_err() {
                    break;
                }
            });
        }
        drop(tx);
        let mut pending: BTreeMap<usize, RowOutcome> = BTreeMap::new();
        let mut expected = 0usize;
        for (i, row) in rx {
            pending.insert(i, row);
            while let Some(row) = pending.remove(&expected) {
                expected += 1;
                rows += 1;
                for key in &row.counters {
                    *counters.entry(key.clone()).or_insert(0) += 1;
                }
                if io_error.is_none() {
                    if let Err(e) = emit(&mut sink, &row.line) {
                        io_error = Some(e);
                    }
                }
            }
        }
    });
    if let Some(e) = io_error {
        return Err(e);
    }

    emit(&mut sink, "summary:")?;
    emit(&mut sink, &format!("  rows: {rows}"))?;
    for (key, count) in &counters {
        emit(&mut sink, &format!("  {key}: {count}"))?;
    }
    if skipped_zero_b > 0 {
        emit(&mut sink, &format!("  skipped (b = 0): {skipped_zero_b}"))?;
    }
    sink.flush().map_err(|e| format!("write failed: {e}"))?;
    Ok(EXIT_VERDICT)
}

// the schema constant is re-exported through the JSON report; reference it
// here so the text and JSON front ends cannot drift apart silently
#[allow(dead_code)]
const _: &str = REPORT_SCHEMA;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_parsing() {
        assert_eq!(parse_range_i64("-500..500").unwrap(), (-500, 500));
        assert_eq!(parse_range_i64("7").unwrap(), (7, 7));
        assert!(parse_range_i64("x..3").is_err());
        assert_eq!(parse_range_u32("18").unwrap(), (18, 18));
        assert!(parse_range_u32("-3..5").is_err());
    }

    #[test]
    fn pair_parsing() {
        assert_eq!(parse_pairs("(9,26),(18,26)").unwrap(), vec![(9, 26), (18, 26)]);
        assert_eq!(parse_pairs("( 0 , 8 )").unwrap(), vec![(0, 8)]);
        assert!(parse_pairs("(9)").is_err());
    }

    #[test]
    fn spec_parsing() {
        let spec = parse_scan_spec(
            "# grid\nn = 18\na = -500..500\nb = -500..500\nmodulus = 27\n\
             pairs = (9,26),(18,26)\ntheorem = corn11\nworkers = 4\n",
        )
        .unwrap();
        assert_eq!(spec.n, (18, 18));
        assert_eq!(spec.a, (-500, 500));
        assert_eq!(spec.pairs, vec![(9, 26), (18, 26)]);
        assert_eq!(spec.theorem, Some(FamilyTable::MixedDegree));
        assert_eq!(spec.workers, Some(4));
        assert_eq!(
            spec_echo(&spec),
            "n=18 a=-500..500 b=-500..500 modulus=27 pairs=(9,26),(18,26) theorem=corn11"
        );
        assert!(parse_scan_spec("n = 18\na = 0\n").is_err(), "missing b");
        assert!(parse_scan_spec("n = 18\na = 0\nb = 1\npairs = (1,2)\n").is_err());
        assert!(parse_scan_spec("n = 18\na = 0\nb = 1\nbogus = 1\n").is_err());
    }

    #[test]
    fn scan_rows_are_self_describing() {
        let row = scan_row(5, 5, 2, Some(FamilyTable::QuinticDegree));
        assert_eq!(
            row.line,
            "row: 5 5 2 not-monogenic d51(1) p=2:P_1=3>N_2(1)=2 d51(1)=confirmed"
        );
        assert!(row.counters.contains(&"status not-monogenic".to_string()));
        assert!(row.counters.contains(&"clause d51(1)".to_string()));
        assert!(row.counters.contains(&"theorem d51(1) confirmed".to_string()));

        let row = scan_row(5, 7, 8, None);
        assert!(row.line.contains("rejected"), "rational root -1: {}", row.line);
    }
}
