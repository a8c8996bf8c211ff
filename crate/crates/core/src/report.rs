//! Report serialization: a human-ordered text form and a single-line JSON
//! form with a fixed key order.

use std::io;

use serde_json::ser::Formatter;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::analysis::{AnalysisReport, MultiPrimeVerdict};
use crate::complex::Simplex;
use crate::search::{Origin, SearchOutcome};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Machine,
}

/// Hex SHA-256 of `bytes`.
pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Compact JSON with `": "` after keys and `", "` between items.
struct SpacedFormatter;

impl Formatter for SpacedFormatter {
    fn begin_array_value<W: ?Sized + io::Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        if first {
            Ok(())
        } else {
            writer.write_all(b", ")
        }
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        if first {
            Ok(())
        } else {
            writer.write_all(b", ")
        }
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        writer.write_all(b": ")
    }
}

/// Serializes `value` on one line, newline-terminated.
pub fn to_machine_line(value: &Value) -> Vec<u8> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SpacedFormatter);
    serde::Serialize::serialize(value, &mut ser).expect("writing to a Vec cannot fail");
    out.push(b'\n');
    out
}

fn per_char<T: Into<Value>>(report: &AnalysisReport, f: impl Fn(&crate::analysis::CharResult) -> T) -> Value {
    let mut m = Map::new();
    for r in &report.per_char {
        m.insert(r.characteristic.to_string(), f(r).into());
    }
    Value::Object(m)
}

fn simplices(list: &[Simplex]) -> Value {
    Value::Array(list.iter().map(|s| json!(s)).collect())
}

/// The machine object for one report.
pub fn report_value(report: &AnalysisReport) -> Value {
    let mut delta = Map::new();
    delta.insert("dim_cap".into(), json!(report.delta.dim_cap));
    delta.insert("counts".into(), json!(report.delta.counts));
    delta.insert("lambda_t".into(), simplices(&report.delta.lambda_t));
    delta.insert("lambda_t1".into(), simplices(&report.delta.lambda_t1));

    let mut bounds = Map::new();
    bounds.insert("faltings".into(), json!(report.bounds.faltings));
    bounds.insert("hl".into(), json!(report.bounds.hl));
    let mut sum = Map::new();
    for (p, b) in &report.bounds.sum {
        sum.insert(p.to_string(), json!(b));
    }
    bounds.insert("sum".into(), Value::Object(sum));
    let mut main = Map::new();
    for (p, b) in &report.bounds.main {
        main.insert(p.to_string(), json!(b));
    }
    bounds.insert("main".into(), Value::Object(main));

    let verdicts = per_char(report, |r| {
        let mut v = Map::new();
        v.insert("conclusion".into(), json!(r.verdict.conclusion));
        v.insert("cd".into(), json!(r.verdict.cd));
        v.insert("notes".into(), json!(r.verdict.notes));
        Value::Object(v)
    });

    let mut m = Map::new();
    m.insert("ring".into(), json!(report.ring));
    m.insert("primes".into(), json!(report.prime_names));
    m.insert("base".into(), json!(report.base));
    m.insert("n_vars".into(), json!(report.n_vars));
    m.insert("heights".into(), json!(report.heights));
    m.insert("c".into(), json!(report.c));
    m.insert("d".into(), json!(report.d));
    m.insert("t".into(), json!(report.t));
    m.insert("v".into(), json!(report.v));
    m.insert("n_primes".into(), json!(report.n_primes));
    m.insert("delta".into(), Value::Object(delta));
    m.insert("w".into(), per_char(report, |r| r.w));
    m.insert("phi_coker".into(), per_char(report, |r| r.phi_coker));
    m.insert("bounds".into(), Value::Object(bounds));
    m.insert("verdicts".into(), verdicts);
    m.insert("caveats".into(), json!(report.caveats));
    m.insert("tool_version".into(), json!(TOOL_VERSION));
    m.insert("input_digest".into(), json!(report.input_digest));
    Value::Object(m)
}

fn join_simplices(list: &[Simplex]) -> String {
    if list.is_empty() {
        return "(none)".into();
    }
    list.iter()
        .map(|s| format!("{{{}}}", s.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn report_text(report: &AnalysisReport) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line(format!("ring       {}", report.ring));
    if let Some(base) = &report.base {
        line(format!("base       {base}"));
    }
    let heights: Vec<String> = report
        .prime_names
        .iter()
        .zip(&report.heights)
        .map(|(n, h)| format!("{n}={h}"))
        .collect();
    line(format!("primes     {} (heights {})", report.n_primes, heights.join(" ")));
    line(format!("d = {}  c = {}  t = {}  v = {}", report.d, report.c, report.t, report.v));
    for caveat in &report.caveats {
        line(format!("caveat     {caveat}"));
    }
    line(String::new());
    let counts: Vec<String> = report.delta.counts.iter().map(ToString::to_string).collect();
    line(format!("Δ simplices per dimension 0..={}: {}", report.delta.dim_cap, counts.join(" ")));
    line(format!("Λ_{} ({}): {}", report.t, report.delta.lambda_t.len(), join_simplices(&report.delta.lambda_t)));
    line(format!(
        "Λ_{} ({}): {}",
        report.t + 1,
        report.delta.lambda_t1.len(),
        join_simplices(&report.delta.lambda_t1)
    ));
    line(String::new());
    for r in &report.per_char {
        line(format!(
            "char {:>5}: w = {}  coker Φ = {}  {}  {}",
            r.characteristic, r.w, r.phi_coker, r.verdict.conclusion, r.verdict.cd
        ));
        for note in &r.verdict.notes {
            line(format!("            note: {note}"));
        }
    }
    line(String::new());
    line(format!("bound faltings  cd ≤ {}", report.bounds.faltings));
    line(format!("bound hl        cd ≤ {}", report.bounds.hl));
    for ((p, s), (_, m)) in report.bounds.sum.iter().zip(&report.bounds.main) {
        let main = m.map_or("n/a (d ≤ (p+1)c)".to_string(), |b| format!("cd ≤ {b}"));
        line(format!("p = {p}: sum cd ≤ {s}, main {main}"));
    }
    out
}

pub fn emit_report(report: &AnalysisReport, format: ReportFormat) -> Vec<u8> {
    match format {
        ReportFormat::Machine => to_machine_line(&report_value(report)),
        ReportFormat::Text => report_text(report).into_bytes(),
    }
}

pub fn emit_multi(verdict: &MultiPrimeVerdict, format: ReportFormat) -> Vec<u8> {
    let overall = |vanishes: bool| if vanishes { "cd ≤ v" } else { "cd > v" };
    match format {
        ReportFormat::Machine => {
            let mut m = Map::new();
            m.insert("d".into(), json!(verdict.d));
            m.insert("bases".into(), Value::Array(verdict.reports.iter().map(report_value).collect()));
            let mut o = Map::new();
            for (ch, &ok) in &verdict.overall {
                o.insert(ch.to_string(), json!(overall(ok)));
            }
            m.insert("overall".into(), Value::Object(o));
            to_machine_line(&Value::Object(m))
        }
        ReportFormat::Text => {
            let mut out = String::new();
            for (i, r) in verdict.reports.iter().enumerate() {
                out.push_str(&format!("== base {} ==\n", i + 1));
                out.push_str(&report_text(r));
                out.push('\n');
            }
            for (ch, &ok) in &verdict.overall {
                out.push_str(&format!("overall char {ch}: {}\n", overall(ok)));
            }
            out.into_bytes()
        }
    }
}

pub fn search_value(outcome: &SearchOutcome, seed: u64) -> Value {
    let findings: Vec<Value> = outcome
        .findings
        .iter()
        .map(|f| {
            let mut m = Map::new();
            match f.origin {
                Origin::Trial(t) => m.insert("trial".into(), json!(t)),
                Origin::Injected(k) => m.insert("injected".into(), json!(k)),
            };
            m.insert("seed".into(), json!(f.seed));
            m.insert("primes".into(), json!(f.primes));
            let mut w = Map::new();
            for (ch, v) in &f.w {
                w.insert(ch.to_string(), json!(v));
            }
            m.insert("w".into(), Value::Object(w));
            Value::Object(m)
        })
        .collect();
    let mut m = Map::new();
    m.insert("seed".into(), json!(seed));
    m.insert("examined".into(), json!(outcome.examined));
    m.insert("skipped".into(), json!(outcome.skipped));
    m.insert("findings".into(), Value::Array(findings));
    m.insert("tool_version".into(), json!(TOOL_VERSION));
    Value::Object(m)
}
