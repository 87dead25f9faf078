//! Versioned structured report rendering: a self-describing indented text
//! format and an equivalent JSON document, both deterministic so fixtures
//! can pin them byte for byte.

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::monogenity::{
    describe_certificate, DivisorOutcome, MonoCertificate, SideCondition, Verdict,
    VerdictStatus,
};

/// Schema tag stamped on every report, bumped on layout changes.
pub const REPORT_SCHEMA: &str = "trinogen.verdict/1";

/// One-line human summary of a verdict.
pub fn summary(v: &Verdict) -> String {
    match v.status {
        VerdictStatus::MonogenicWithGenerator => {
            let eta = v
                .generator
                .as_ref()
                .map(MonoCertificate::generator)
                .unwrap_or_else(|| "eta".to_string());
            format!("monogenic; generator {eta}")
        }
        VerdictStatus::NotMonogenic => {
            let mut ps: Vec<u64> = v.witnesses.iter().map(|w| w.p).collect();
            ps.sort_unstable();
            ps.dedup();
            let list = ps.iter().map(u64::to_string).collect::<Vec<_>>().join(", ");
            if ps.len() == 1 {
                format!("not monogenic; common index divisor {list}")
            } else {
                format!("not monogenic; common index divisors {list}")
            }
        }
        VerdictStatus::ThetaGenerates => "monogenic; Z_K = Z[theta]".to_string(),
        VerdictStatus::Inconclusive => "inconclusive".to_string(),
    }
}

fn list_u64(xs: &[u64]) -> String {
    let inner = xs.iter().map(u64::to_string).collect::<Vec<_>>().join(", ");
    format!("[{inner}]")
}

/// Renders a verdict in the indented key-value text format. With `verbose`
/// the full analysis transcript is appended.
pub fn render_text(v: &Verdict, verbose: bool) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line(format!("report: {REPORT_SCHEMA}"));
    line(format!("trinomial: {}", v.trinomial));
    line(format!("degree: {}", v.trinomial.n()));
    line(format!("status: {}", v.status));
    line(format!("summary: {}", summary(v)));
    line(format!("discriminant: {}", v.discriminant));
    line(format!("irreducibility: {}", describe_certificate(&v.irreducibility)));
    line(format!("candidate-primes: {}", list_u64(&v.candidate_primes)));
    for report in &v.prime_reports {
        line(format!("prime {}:", report.p));
        line(format!("  shape: {}", report.analysis.shape));
        line(format!("  census: {}", report.census));
        line(format!("  disc-valuation: {}", report.analysis.ore.disc_valuation));
        line(format!("  index-lower-bound: {}", report.analysis.ore.index_lower_bound));
        line(format!("  outcome: {}", report.outcome));
    }
    if v.witnesses.is_empty() {
        line("witnesses: (none)".to_string());
    } else {
        line("witnesses:".to_string());
        for w in &v.witnesses {
            line(format!("  {w}"));
        }
    }
    if v.clauses.is_empty() {
        line("clauses: (none)".to_string());
    } else {
        line("clauses:".to_string());
        for c in &v.clauses {
            line(format!("  {c}"));
        }
    }
    if let Some(scan) = &v.maximality {
        line("maximality:".to_string());
        line(format!("  complete: {}", scan.complete));
        if !scan.complete {
            line(format!("  cofactor: {}", scan.cofactor));
        }
        line(format!("  all-maximal: {}", scan.all_maximal));
        for &(q, ok) in &scan.tested {
            line(format!("  prime {q}: {}", if ok { "maximal" } else { "not maximal" }));
        }
    }
    if let Some(cert) = &v.generator {
        line(format!("generator: {}", cert.generator()));
        line(format!("  exponents: ({}, {})", cert.x, cert.y));
        line(format!("  minimal-polynomial: {}", cert.minimal_polynomial));
        match &cert.side_condition {
            SideCondition::Verified => line("  side-condition: verified".to_string()),
            SideCondition::VerifiedUpTo { bound, cofactor } => line(format!(
                "  side-condition: verified below {bound} (cofactor {cofactor} untested)"
            )),
        }
        line(format!(
            "  disc-valuation: {} -> {}",
            cert.disc_valuation_f, cert.disc_valuation_eta
        ));
    }
    if v.flags.is_empty() {
        line("flags: (none)".to_string());
    } else {
        line("flags:".to_string());
        for flag in &v.flags {
            line(format!("  {flag}"));
        }
    }
    if verbose {
        line("transcript:".to_string());
        for entry in &v.transcript {
            line(format!("  {entry}"));
        }
    }
    out
}

fn big(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

/// Renders a verdict as a JSON document under the same schema tag.
/// Arbitrary-precision integers are emitted as strings.
pub fn render_json(v: &Verdict) -> Value {
    let primes: Vec<Value> = v
        .prime_reports
        .iter()
        .map(|report| {
            let shape: Vec<Value> =
                report.analysis.shape.primes.iter().map(|&(e, f)| json!([e, f])).collect();
            let census: Vec<Value> = report
                .census
                .entries()
                .map(|(m, count)| json!({"m": m, "count": count}))
                .collect();
            let outcome = match &report.outcome {
                DivisorOutcome::Witness(_) => "witness",
                DivisorOutcome::NoWitness => "no-witness",
                DivisorOutcome::Incomplete => "incomplete",
            };
            json!({
                "p": report.p,
                "shape": shape,
                "complete": report.analysis.shape.complete,
                "census": census,
                "disc_valuation": report.analysis.ore.disc_valuation,
                "index_lower_bound": report.analysis.ore.index_lower_bound,
                "outcome": outcome,
            })
        })
        .collect();
    let witnesses: Vec<Value> = v
        .witnesses
        .iter()
        .map(|w| {
            json!({
                "p": w.p,
                "m": w.residue_degree,
                "Pm": w.primes_above,
                "Npm": big(&w.available),
            })
        })
        .collect();
    let clauses: Vec<Value> = v
        .clauses
        .iter()
        .map(|c| {
            json!({
                "table": c.table.id(),
                "clause": c.clause,
                "p": c.p,
                "description": c.description,
            })
        })
        .collect();
    let generator = v.generator.as_ref().map(|cert| {
        let coefficients: Vec<Value> = (0..=cert.minimal_polynomial.degree().unwrap_or(0))
            .map(|i| big(&cert.minimal_polynomial.coeff(i)))
            .collect();
        let side_condition = match &cert.side_condition {
            SideCondition::Verified => json!({"verified": true}),
            SideCondition::VerifiedUpTo { bound, cofactor } => {
                json!({"verified": true, "bound": bound, "cofactor": big(cofactor)})
            }
        };
        json!({
            "eta": cert.generator(),
            "x": cert.x,
            "y": cert.y,
            "minimal_polynomial": cert.minimal_polynomial.to_string(),
            "coefficients": coefficients,
            "side_condition": side_condition,
            "disc_valuation_f": cert.disc_valuation_f,
            "disc_valuation_eta": cert.disc_valuation_eta,
        })
    });
    let maximality = v.maximality.as_ref().map(|scan| {
        let tested: Vec<Value> =
            scan.tested.iter().map(|&(q, ok)| json!({"p": q, "maximal": ok})).collect();
        json!({
            "complete": scan.complete,
            "cofactor": big(&scan.cofactor),
            "all_maximal": scan.all_maximal,
            "tested": tested,
        })
    });
    json!({
        "schema": REPORT_SCHEMA,
        "trinomial": {
            "n": v.trinomial.n(),
            "a": big(v.trinomial.a()),
            "b": big(v.trinomial.b()),
            "display": v.trinomial.to_string(),
        },
        "status": v.status.to_string(),
        "summary": summary(v),
        "discriminant": big(&v.discriminant),
        "irreducibility": {
            "description": describe_certificate(&v.irreducibility),
            "proved": v.irreducibility.proves_irreducible(),
        },
        "candidate_primes": v.candidate_primes,
        "primes": primes,
        "witnesses": witnesses,
        "clauses": clauses,
        "generator": generator,
        "maximality": maximality,
        "flags": v.flags,
        "transcript": v.transcript,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monogenity::analyze;
    use crate::zpoly::Trinomial;

    fn verdict(n: u32, a: i64, b: i64) -> Verdict {
        let t = Trinomial::new(n, BigInt::from(a), BigInt::from(b)).unwrap();
        analyze(&t).unwrap()
    }

    #[test]
    fn text_report_for_certified_generator() {
        let expected = "\
report: trinogen.verdict/1
trinomial: x^4 + 8x + 8
degree: 4
status: monogenic-with-generator
summary: monogenic; generator theta^3/4
discriminant: 20480
irreducibility: one-sided polygon at 2 with height 3
candidate-primes: [2]
prime 2:
  shape: {(4,1)}
  census: P_1=1
  disc-valuation: 12
  index-lower-bound: 3
  outcome: no witness
witnesses: (none)
clauses: (none)
maximality:
  complete: true
  all-maximal: false
  prime 2: not maximal
generator: theta^3/4
  exponents: (3, 2)
  minimal-polynomial: x^4 + 6x^3 + 12x^2 + 8x + 2
  side-condition: verified
  disc-valuation: 12 -> 6
flags: (none)
";
        assert_eq!(render_text(&verdict(4, 8, 8), false), expected);
    }

    #[test]
    fn text_report_for_witnessed_field() {
        let text = render_text(&verdict(5, 5, 2), false);
        assert!(text.starts_with("report: trinogen.verdict/1\n"));
        assert!(text.contains("status: not-monogenic\n"));
        assert!(text.contains("summary: not monogenic; common index divisor 2\n"));
        assert!(text.contains("  p=2: P_1=3 > N_2(1)=2\n"));
        assert!(text.contains("d51(1) at p=2"));
    }

    #[test]
    fn verbose_report_appends_transcript() {
        let v = verdict(5, 5, 2);
        let quiet = render_text(&v, false);
        let chatty = render_text(&v, true);
        assert!(chatty.starts_with(&quiet));
        assert!(chatty.contains("transcript:\n"));
        for entry in &v.transcript {
            assert!(chatty.contains(entry.as_str()), "missing transcript entry {entry}");
        }
    }

    #[test]
    fn json_report_round_trips_key_facts() {
        let doc = render_json(&verdict(5, 5, 2));
        assert_eq!(doc["schema"], REPORT_SCHEMA);
        assert_eq!(doc["status"], "not-monogenic");
        assert_eq!(doc["trinomial"]["n"], 5);
        assert_eq!(doc["trinomial"]["a"], "5");
        let w = &doc["witnesses"][0];
        assert_eq!((w["p"].as_u64(), w["m"].as_u64()), (Some(2), Some(1)));
        assert_eq!(w["Pm"], 3);
        assert_eq!(w["Npm"], "2");
        assert_eq!(doc["clauses"][0]["table"], "d51");
        assert_eq!(doc["clauses"][0]["clause"], 1);
        assert!(doc["generator"].is_null());

        let doc = render_json(&verdict(4, 8, 8));
        assert_eq!(doc["status"], "monogenic-with-generator");
        assert_eq!(doc["generator"]["eta"], "theta^3/4");
        assert_eq!(doc["generator"]["x"], 3);
        assert_eq!(doc["generator"]["y"], 2);
        assert_eq!(doc["generator"]["coefficients"][0], "2");
        assert_eq!(doc["discriminant"], "20480");
        assert_eq!(doc["maximality"]["all_maximal"], false);
        assert_eq!(doc["primes"][0]["outcome"], "no-witness");
    }

    #[test]
    fn json_is_deterministic() {
        let a = serde_json::to_string_pretty(&render_json(&verdict(5, 5, 2))).unwrap();
        let b = serde_json::to_string_pretty(&render_json(&verdict(5, 5, 2))).unwrap();
        assert_eq!(a, b);
    }
}
