use std::fmt::Write as _;

use pbw_core::harness::{Evidence, Finding, SearchBudget, Truth, Witness};
use pbw_core::Extension;
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    Inconclusive,
    Violation,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Violation => 1,
            Status::Error => 2,
            Status::Inconclusive => 3,
        }
    }

    /// Violation outranks inconclusive, which outranks ok.
    pub fn combine(self, other: Status) -> Status {
        self.max(other)
    }
}

/// Everything a command prints. `result` holds the comparable content and
/// `timings_ms` the wall-clock figures, kept apart so that runs can be
/// diffed after dropping one field.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub verb: String,
    pub status: Status,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub result: Value,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub timings_ms: Vec<Timing>,
}

#[derive(Debug, Serialize)]
pub struct Timing {
    pub label: String,
    pub ms: f64,
}

#[derive(Debug, Serialize)]
pub struct BudgetJson {
    pub degree: u32,
    pub support: usize,
    pub exponent: u32,
    pub pairs: u64,
}

impl From<&SearchBudget> for BudgetJson {
    fn from(b: &SearchBudget) -> Self {
        BudgetJson {
            degree: b.degree_cap,
            support: b.support_cap,
            exponent: b.exponent_cap,
            pairs: u64::try_from(b.pair_budget).unwrap_or(u64::MAX),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct PolyJson {
    pub role: String,
    pub expr: String,
}

#[derive(Debug, Serialize)]
pub struct WitnessJson {
    pub kind: String,
    pub description: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub polynomials: Vec<PolyJson>,
}

impl WitnessJson {
    pub fn new(w: &Witness, ext: &Extension) -> Self {
        WitnessJson {
            kind: w.kind().into(),
            description: w.describe(ext),
            polynomials: w
                .polynomials(ext)
                .into_iter()
                .map(|(role, f)| PolyJson { role: role.into(), expr: ext.format_poly(&f) })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct FindingJson {
    pub name: String,
    pub truth: &'static str,
    pub evidence: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
}

impl FindingJson {
    pub fn new(f: &Finding, ext: &Extension) -> Self {
        let (truth, reason, witness) = match &f.truth {
            Truth::Holds => ("holds", None, None),
            Truth::Fails(w) => ("fails", None, Some(WitnessJson::new(w, ext))),
            Truth::Unknown(why) => ("unknown", Some(why.clone()), None),
        };
        let evidence = match f.evidence {
            Evidence::Exact => "exact",
            Evidence::Bounded(_) => "bounded",
        };
        FindingJson { name: f.name.clone(), truth, evidence, reason, witness }
    }
}

/// Plain-text rendering of a JSON value, one `key: value` per line.
pub fn render_human(value: &Value) -> String {
    let mut out = String::new();
    render(value, 0, &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.is_empty() => Some("[]".into()),
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            let parts: Vec<String> = items.iter().filter_map(scalar).collect();
            Some(format!("{{{}}}", parts.join(", ")))
        }
        _ => None,
    }
}

fn render(value: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                match scalar(v) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render(v, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}-");
                        render(item, depth + 1, out);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn nested_values_indent() {
        let v = json!({"a": 1, "b": {"c": [1, 2]}, "d": [{"e": "x"}]});
        assert_eq!(render_human(&v), "a: 1\nb:\n  c: {1, 2}\nd:\n  -\n    e: x\n");
    }

    #[test]
    fn statuses_combine() {
        assert_eq!(Status::Ok.combine(Status::Inconclusive), Status::Inconclusive);
        assert_eq!(Status::Violation.combine(Status::Inconclusive), Status::Violation);
        assert_eq!(Status::Violation.exit_code(), 1);
    }
}
