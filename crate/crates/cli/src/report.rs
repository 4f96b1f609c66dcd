use std::collections::BTreeMap;
use std::fmt::Write as _;

use conformal_dirac::exact::{fmt_rational, Poly, Rational};
use conformal_dirac::operator::OperatorPoly;
use conformal_dirac::verify::{Counterexample, Verdict};
use serde::Serialize;
use serde_json::{json, Value};

/// One run of one subcommand. `elapsed_ms` is the only field that varies
/// between identical invocations.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub params: BTreeMap<String, String>,
    pub verdicts: Vec<ReportVerdict>,
    pub payload: Value,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportVerdict {
    pub name: String,
    pub ok: bool,
    pub counterexample: Option<Counterexample>,
}

impl ReportVerdict {
    pub fn check(name: &str, ok: bool, params: &BTreeMap<String, String>, lhs: String, rhs: String) -> Self {
        let counterexample = (!ok).then(|| Counterexample { params: params.clone(), lhs, rhs });
        ReportVerdict { name: name.to_string(), ok, counterexample }
    }
}

impl From<Verdict> for ReportVerdict {
    fn from(v: Verdict) -> Self {
        ReportVerdict { name: v.name, ok: v.ok, counterexample: v.counterexample }
    }
}

impl RunReport {
    pub fn new(command: &str, params: &[(&str, String)]) -> Self {
        RunReport {
            command: command.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            verdicts: Vec::new(),
            payload: Value::Null,
            elapsed_ms: 0,
        }
    }

    pub fn all_ok(&self) -> bool {
        self.verdicts.iter().all(|v| v.ok)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(out, "{} {}", self.command, params.join(" "));
        let _ = writeln!(out);
        for v in &self.verdicts {
            let _ = writeln!(out, "  [{}] {}", if v.ok { " ok " } else { "FAIL" }, v.name);
            if let Some(cx) = &v.counterexample {
                let at: Vec<String> = cx.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let _ = writeln!(out, "         at  {}", at.join(" "));
                let _ = writeln!(out, "         lhs {}", cx.lhs);
                let _ = writeln!(out, "         rhs {}", cx.rhs);
            }
        }
        if !self.verdicts.is_empty() {
            let _ = writeln!(out);
        }
        render_value(&mut out, &self.payload, 0);
        let _ = writeln!(out, "\n({} ms)", self.elapsed_ms);
        out
    }
}

fn render_value(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                if let Some(s) = scalar_text(val) {
                    let _ = writeln!(out, "{pad}{k}: {s}");
                } else {
                    let _ = writeln!(out, "{pad}{k}:");
                    render_value(out, val, indent + 1);
                }
            }
        }
        Value::Array(items) if is_flat_rows(items) => render_rows(out, items, &pad),
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                if let Some(s) = scalar_text(item) {
                    let _ = writeln!(out, "{pad}[{i}] {s}");
                } else {
                    let _ = writeln!(out, "{pad}[{i}]");
                    render_value(out, item, indent + 1);
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar_text(other).unwrap_or_default());
        }
    }
}

/// Nonempty list of objects with identical keys and scalar values.
fn is_flat_rows(items: &[Value]) -> bool {
    let Some(Value::Object(first)) = items.first() else {
        return false;
    };
    items.iter().all(|row| match row {
        Value::Object(m) => m.keys().eq(first.keys()) && m.values().all(|v| scalar_text(v).is_some()),
        _ => false,
    })
}

fn render_rows(out: &mut String, items: &[Value], pad: &str) {
    let keys: Vec<&String> = items[0].as_object().expect("checked").keys().collect();
    let cells: Vec<Vec<String>> = items
        .iter()
        .map(|row| keys.iter().map(|k| scalar_text(&row[k.as_str()]).unwrap_or_default()).collect())
        .collect();
    let widths: Vec<usize> = keys
        .iter()
        .enumerate()
        .map(|(i, k)| cells.iter().map(|r| r[i].len()).chain([k.len()]).max().unwrap_or(0))
        .collect();
    let line = |row: Vec<&str>| {
        let parts: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        format!("{pad}{}", parts.join("  "))
    };
    let _ = writeln!(out, "{}", line(keys.iter().map(|k| k.as_str()).collect()));
    for r in &cells {
        let _ = writeln!(out, "{}", line(r.iter().map(String::as_str).collect()));
    }
}

/// Inline text for scalars and for polynomial objects, which print as
/// their `text` field.
fn scalar_text(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Object(m) if m.contains_key("text") => m["text"].as_str().map(str::to_string),
        Value::Array(a) if a.len() <= 12 && a.iter().all(|x| x.is_string() || x.is_number()) => {
            let items: Vec<String> = a.iter().filter_map(scalar_text).collect();
            Some(format!("[{}]", items.join(", ")))
        }
        _ => None,
    }
}

pub fn q(x: &Rational) -> Value {
    Value::String(fmt_rational(x))
}

/// `{"text": ..., "coeffs": [...]}` with coefficients in ascending degree.
pub fn poly(p: &Poly<Rational>) -> Value {
    json!({ "text": p.to_string(), "coeffs": p.coeff_strings() })
}

/// Rational operators print like polynomials; operators with formal `c`
/// list their `(D power, c power, coefficient)` terms.
pub fn operator(op: &OperatorPoly) -> Value {
    match op.to_rational_poly() {
        Some(p) => poly(&p),
        None => {
            let terms: Vec<Value> = op
                .c_table()
                .into_iter()
                .map(|(d, c, v)| json!({ "d_power": d, "c_power": c, "coeff": fmt_rational(&v) }))
                .collect();
            json!({ "text": op.to_string(), "terms": terms })
        }
    }
}
