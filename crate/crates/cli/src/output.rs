//! Human and JSON rendering of command results.

use serde_json::Value;
use std::io::{self, Write};

/// Arrays longer than this are summarized in human output.
const MAX_LISTED: usize = 16;

/// `x` with 12 significant digits, trailing zeros dropped. Plain notation
/// for magnitudes in `[1e-5, 1e12)`, scientific otherwise.
pub fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { format!("{x}") };
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => i.to_string(),
            (_, Some(u)) => u.to_string(),
            _ => sig12(n.as_f64().unwrap_or(f64::NAN)),
        }),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn inline(v: &Value) -> Option<String> {
    if let Some(s) = scalar(v) {
        return Some(s);
    }
    let Value::Array(items) = v else { return None };
    let parts: Option<Vec<String>> = items.iter().map(inline).collect();
    parts.map(|p| format!("[{}]", p.join(", ")))
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    if let Some(s) = inline(v) {
        if s.len() <= 120 || !matches!(v, Value::Array(_)) {
            out.push((prefix.to_string(), s));
            return;
        }
    }
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, x, out);
            }
        }
        Value::Array(items) if items.len() > MAX_LISTED => {
            out.push((prefix.to_string(), format!("<{} entries; see --json>", items.len())));
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        _ => unreachable!("scalars are inlined"),
    }
}

/// Writes `v` as pretty JSON or as aligned `key: value` lines.
pub fn emit(v: &Value, json: bool, w: &mut dyn Write) -> io::Result<()> {
    if json {
        return writeln!(w, "{}", serde_json::to_string_pretty(v).expect("serializable"));
    }
    let mut rows = Vec::new();
    flatten("", v, &mut rows);
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, s) in rows {
        writeln!(w, "{k:<width$}  {s}")?;
    }
    Ok(())
}
