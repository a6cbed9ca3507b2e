//! JSON and CSV rendering of results.
//!
//! Exact rationals are always strings `"p/q"` (or `"n"`); complex numbers are
//! `{re, im, digits}` with decimal strings carrying `digits` significant
//! digits.

use moonshine_core::engine::{Check, Value as ReportValue, VerificationReport};
use moonshine_core::{HPComplex, Rational, Real, TruncatedSeries};
use serde_json::{json, Map, Value};

pub fn rational(q: &Rational) -> Value {
    Value::String(q.to_string())
}

pub fn series(s: &TruncatedSeries) -> Value {
    Value::Array(s.coeffs().iter().map(rational).collect())
}

/// `x` with about `digits` significant digits.
pub fn decimal(x: &Real, digits: u32) -> String {
    let int_digits = x.magnitude().map_or(0, |m| (m.max(0) as f64 * std::f64::consts::LOG10_2).ceil() as i64);
    let frac = (i64::from(digits) - int_digits).max(0) as usize;
    x.to_decimal(frac)
}

pub fn complex(z: &HPComplex, digits: u32) -> Value {
    json!({ "re": decimal(&z.re, digits), "im": decimal(&z.im, digits), "digits": digits })
}

/// A residual or tolerance in scientific notation.
pub fn small(x: &Real) -> Value {
    if x.is_zero() {
        return Value::String("0".into());
    }
    Value::String(format!("{:.3e}", x.to_f64()))
}

fn report_value(v: &ReportValue, digits: u32) -> Value {
    match v {
        ReportValue::Exact(q) => rational(q),
        ReportValue::Complex(z) => complex(z, digits),
        ReportValue::Series(s) => series(s),
    }
}

fn check(c: &Check) -> Value {
    json!({ "name": c.name, "residual": small(&c.residual), "pass": c.pass })
}

pub fn report(r: &VerificationReport, digits: u32) -> Value {
    let mut m = Map::new();
    m.insert("case".into(), json!(r.case.name()));
    if let Some(t) = &r.t {
        m.insert("t".into(), report_value(t, digits));
    }
    if let Some(arg) = &r.argument {
        m.insert("argument".into(), complex(arg, digits));
    }
    m.insert("lhs".into(), report_value(&r.lhs, digits));
    m.insert("rhs".into(), report_value(&r.rhs, digits));
    m.insert("abs_residual".into(), small(&r.abs_residual));
    m.insert("tolerance".into(), small(&r.tolerance));
    let matched = if r.digits_matched == u32::MAX { json!("exact") } else { json!(r.digits_matched) };
    m.insert("digits_matched".into(), matched);
    m.insert("series_terms_used".into(), json!(r.series_terms_used));
    m.insert("pass".into(), json!(r.pass));
    m.insert("first_mismatch".into(), json!(r.first_mismatch));
    m.insert("checks".into(), Value::Array(r.checks.iter().map(check).collect()));
    m.insert("notes".into(), json!(r.notes));
    Value::Object(m)
}

/// The top-level record `{command, inputs, result, version}`.
pub fn record(command: &str, inputs: Value, result: Value) -> Value {
    json!({
        "command": command,
        "inputs": inputs,
        "result": result,
        "version": env!("CARGO_PKG_VERSION"),
    })
}

/// CSV rows `index,value` for a coefficient list.
pub fn csv_series(s: &TruncatedSeries) -> String {
    let mut out = String::from("index,value\n");
    for (k, c) in s.coeffs().iter().enumerate() {
        out.push_str(&format!("{k},{c}\n"));
    }
    out
}

/// CSV rows `key,value` for a JSON object, flattening nested fields with dots.
pub fn csv_flat(v: &Value) -> String {
    let mut rows = Vec::new();
    flatten("", v, &mut rows);
    let mut out = String::from("key,value\n");
    for (k, v) in rows {
        out.push_str(&format!("{k},{}\n", quote(&v)));
    }
    out
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, v)| flatten(&join(k), v, rows)),
        Value::Array(a) => a.iter().enumerate().for_each(|(k, v)| flatten(&join(&k.to_string()), v, rows)),
        Value::String(s) => rows.push((prefix.to_string(), s.clone())),
        other => rows.push((prefix.to_string(), other.to_string())),
    }
}

fn quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
