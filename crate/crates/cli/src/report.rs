//! The report envelope shared by every command.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use lieq::dgl_homology::COHOMOLOGY_CONVENTION;
use lieq::jacobi::Lambda4Variant;

pub const SCHEMA: &str = "lieq-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Diagnostic,
    CutoffIncomplete,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Diagnostic => 1,
            Status::CutoffIncomplete => 2,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Diagnostic => "diagnostic",
            Status::CutoffIncomplete => "cutoff-incomplete",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Diagnostic {
    pub kind: String,
    pub message: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub generator: Option<String>,
}

impl Diagnostic {
    pub fn new(kind: &str, message: impl Into<String>) -> Self {
        Diagnostic { kind: kind.to_string(), message: message.into(), line: None, column: None, generator: None }
    }

    pub fn at(mut self, line: usize, column: usize) -> Self {
        self.line = Some(line);
        self.column = Some(column);
        self
    }

    pub fn on(mut self, generator: &str) -> Self {
        self.generator = Some(generator.to_string());
        self
    }

    fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("kind".into(), json!(self.kind));
        m.insert("message".into(), json!(self.message));
        if let Some(l) = self.line {
            m.insert("line".into(), json!(l));
        }
        if let Some(c) = self.column {
            m.insert("column".into(), json!(c));
        }
        if let Some(g) = &self.generator {
            m.insert("generator".into(), json!(g));
        }
        Value::Object(m)
    }
}

pub struct Outcome {
    pub status: Status,
    pub result: Value,
    pub diagnostics: Vec<Diagnostic>,
}

impl Outcome {
    pub fn ok(result: Value) -> Self {
        Outcome { status: Status::Ok, result, diagnostics: Vec::new() }
    }

    pub fn failed(d: Diagnostic, status: Status) -> Self {
        Outcome { status, result: Value::Null, diagnostics: vec![d] }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn conventions() -> Value {
    json!({
        "n0": "n0 = r + 1 for the least r >= 1 with a nonzero perturbation component d_r of the filtered model; absent when coformal within cutoffs",
        "cohomology": COHOMOLOGY_CONVENTION,
        "koszul": "adjacent transposition of a, b contributes (-1)^(|a||b|+1)",
        "lambda4": Lambda4Variant::Symmetric.describe(),
        "bidegree": "(filtration, internal degree); total degree is their sum",
    })
}

pub struct Envelope<'a> {
    pub command: &'a str,
    pub input: Value,
    pub cutoffs: Value,
    pub outcome: Outcome,
    pub elapsed_ms: Option<u128>,
}

impl Envelope<'_> {
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("schema".into(), json!(SCHEMA));
        m.insert("command".into(), json!(self.command));
        m.insert("input".into(), self.input.clone());
        m.insert("cutoffs".into(), self.cutoffs.clone());
        m.insert("conventions".into(), conventions());
        m.insert("status".into(), json!(self.outcome.status.as_str()));
        m.insert("result".into(), self.outcome.result.clone());
        m.insert("diagnostics".into(), Value::Array(self.outcome.diagnostics.iter().map(Diagnostic::to_json).collect()));
        if let Some(ms) = self.elapsed_ms {
            m.insert("timing".into(), json!({ "elapsed_ms": ms }));
        }
        Value::Object(m)
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("values serialize");
        s.push('\n');
        s
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        text(&mut s, &self.to_json(), 0);
        s
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.is_empty() => Some("(none)".into()),
        Value::Array(a) if a.iter().all(|x| matches!(x, Value::Number(_) | Value::String(_) | Value::Bool(_))) => {
            Some(a.iter().map(|x| scalar(x).unwrap_or_default()).collect::<Vec<_>>().join(", "))
        }
        Value::Object(o) if o.is_empty() => Some("(none)".into()),
        _ => None,
    }
}

/// An indented outline of a JSON value.
fn text(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                match scalar(x) {
                    Some(s) if !s.contains('\n') => writeln!(out, "{pad}{k}: {s}").unwrap(),
                    Some(s) => {
                        writeln!(out, "{pad}{k}:").unwrap();
                        for line in s.lines() {
                            writeln!(out, "{pad}  {line}").unwrap();
                        }
                    }
                    None => {
                        writeln!(out, "{pad}{k}:").unwrap();
                        text(out, x, indent + 1);
                    }
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match scalar(x) {
                    Some(s) => writeln!(out, "{pad}- {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}-").unwrap();
                        text(out, x, indent + 1);
                    }
                }
            }
        }
        other => writeln!(out, "{pad}{}", scalar(other).unwrap_or_default()).unwrap(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_of_the_empty_string() {
        assert_eq!(sha256_hex(b""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    }

    #[test]
    fn exit_codes() {
        assert_eq!([Status::Ok, Status::Diagnostic, Status::CutoffIncomplete].map(Status::exit_code), [0, 1, 2]);
    }

    #[test]
    fn text_outline() {
        let mut s = String::new();
        text(&mut s, &json!({"a": 1, "b": {"c": [1, 2]}, "d": [{"e": "x"}]}), 0);
        assert_eq!(s, "a: 1\nb:\n  c: 1, 2\nd:\n  -\n    e: x\n");
    }
}
