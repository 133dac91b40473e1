//! Text, JSON and CSV renderings of a report.

use std::collections::BTreeSet;

use serde_json::{Map, Value};

use crate::report::{ClassNumber, Report, ResultItem};
use crate::CliError;

pub fn json(report: &Report) -> Result<String, CliError> {
    serde_json::to_string_pretty(report).map_err(|e| CliError::Env(e.to_string()))
}

fn flatten(prefix: &str, v: &Value, out: &mut Map<String, Value>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) => {
            for (k, v) in m {
                flatten(&key(k), v, out);
            }
        }
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            out.insert(prefix.to_string(), Value::String(parts.join(";")));
        }
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(Value::to_string).collect();
            out.insert(prefix.to_string(), Value::String(parts.join(";")));
        }
        _ => {
            out.insert(prefix.to_string(), v.clone());
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// One row per result, columns are dotted paths; arrays are joined by `;`.
pub fn csv(report: &Report) -> Result<String, CliError> {
    let err = |e: &dyn std::fmt::Display| CliError::Env(format!("csv: {e}"));
    let rows: Vec<Map<String, Value>> = report
        .results
        .iter()
        .map(|r| {
            let mut m = Map::new();
            flatten("", &serde_json::to_value(r).map_err(|e| err(&e))?, &mut m);
            Ok(m)
        })
        .collect::<Result<_, CliError>>()?;
    let mut columns: Vec<String> = Vec::new();
    let mut seen = BTreeSet::new();
    for row in &rows {
        for k in row.keys() {
            if seen.insert(k.clone()) {
                columns.push(k.clone());
            }
        }
    }
    // A null object in one row and a filled one in another share the nested
    // columns; the bare parent column is dropped.
    let nested: Vec<String> = columns.clone();
    columns.retain(|c| {
        !nested.iter().any(|n| {
            n.len() > c.len() && n.starts_with(c.as_str()) && n[c.len()..].starts_with('.')
        })
    });
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&columns).map_err(|e| err(&e))?;
    for row in &rows {
        w.write_record(
            columns
                .iter()
                .map(|c| row.get(c).map(scalar).unwrap_or_default()),
        )
        .map_err(|e| err(&e))?;
    }
    let bytes = w.into_inner().map_err(|e| err(&e))?;
    String::from_utf8(bytes).map_err(|e| err(&e))
}

fn h(c: ClassNumber) -> String {
    c.known().map_or("unknown".into(), |h| h.to_string())
}

fn list(v: &[u64]) -> String {
    let parts: Vec<String> = v.iter().map(u64::to_string).collect();
    format!("({})", parts.join(","))
}

pub fn text(report: &Report) -> String {
    let mut out = String::new();
    for item in &report.results {
        let line = match item {
            ResultItem::Scan(r) => format!(
                "p={:<6} h={:<8} 3-part={:<8} u={:<2} type={:<12} |C^σ|={}",
                r.p,
                h(r.h_gamma),
                list(&r.h_gamma3_divisors),
                r.u.as_ref().map_or("-".into(), |u| u.u.to_string()),
                r.k_type,
                r.ambiguous_order
            ),
            ResultItem::Table1(r) => format!(
                "p={:<6} type={:<12} expected={} {:?}{}",
                r.p,
                r.k_type,
                r.expected_k_type,
                r.verdict,
                if r.problems.is_empty() {
                    String::new()
                } else {
                    format!(": {}", r.problems.join("; "))
                }
            ),
            ResultItem::Split(r) => {
                let mut s = format!(
                    "d={} q={} ({})\n  Q(∛d):     {}\n  Q(ζ₃):     {}\n  Q(∛d, ζ₃): {}",
                    r.d, r.q, r.field_kind, r.gamma.display, r.k0.display, r.k.display
                );
                if let Some(a) = r.agrees_with_brute {
                    s.push_str(&format!("\n  agrees with x³ − d mod q: {a}"));
                }
                s
            }
            ResultItem::Symbols(r) => {
                let mut s = format!(
                    "p={} (p mod 9 = {})\n  π₁ = {}, π₂ = {}\n  (3/p)₃ = ζ^{}\n  (λ/π₁)₃ = ζ^{}\n  ζ local norm: {}\n  |C^σ| = {}",
                    r.p,
                    r.p_mod9,
                    r.pi1,
                    r.pi2,
                    r.three_symbol,
                    r.lambda_symbol,
                    r.zeta_is_local_norm,
                    r.ambiguous_order
                );
                if let Some((c, e)) = r.extra {
                    s.push_str(&format!("\n  ({c}/p)₃ = ζ^{e}"));
                }
                s
            }
            ResultItem::ClassGroup(r) => {
                let mut s = format!("d={} Minkowski bound {:.3}", r.d, r.minkowski_bound);
                match &r.structure {
                    Some(cg) => s.push_str(&format!(
                        "\n  h = {}, divisors {}, 3-part {}, {:?}",
                        cg.h,
                        list(&cg.divisors),
                        list(&cg.p3_type),
                        cg.certification
                    )),
                    None => s.push_str(&format!(
                        "\n  unverified: {}",
                        r.unverified_reason.as_deref().unwrap_or("budget exhausted")
                    )),
                }
                if let Some(k) = &r.k_structure {
                    let t = k.k_type.as_deref().map_or("undetermined".into(), list);
                    s.push_str(&format!(
                        "\n  Q(∛d, ζ₃): u = {}, 3-class number {}, type {t}",
                        k.u, k.h_k3
                    ));
                }
                s
            }
            ResultItem::ModelCheck(c) => {
                let mut s = format!(
                    "{} models, {} frames, explicit model consistent: {}",
                    c.models, c.frames, c.explicit_model_consistent
                );
                for claim in &c.claims {
                    s.push_str(&format!(
                        "\n  {:<24} {:?} ({} hold, {} fail)",
                        claim.id, claim.status, claim.holds, claim.fails
                    ));
                }
                s
            }
        };
        out.push_str(&line);
        out.push('\n');
    }
    for n in &report.notes {
        out.push_str(&format!("note: {n}\n"));
    }
    out.push_str(&format!("status: {:?}\n", report.status).to_lowercase());
    out
}
