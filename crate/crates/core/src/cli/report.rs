use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::algebra::QuadraticPresentation;
use crate::cli::dsl::FieldSpec;
use crate::cli::eval::Bindings;
use crate::cli::CliError;
use crate::field::Field;
use crate::linalg::Matrix;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

/// What a run prints and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Row-major matrix of exact scalars as strings.
pub fn matrix_json<F: Field>(m: &Matrix<F>) -> Value {
    Value::Array((0..m.rows()).map(|i| json!(m.row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>())).collect())
}

pub fn presentation_json<F: Field>(p: &QuadraticPresentation<F>) -> Value {
    json!({ "generators": p.names(), "relations": p.relation_strings() })
}

pub fn field_label(f: FieldSpec) -> String {
    match f {
        FieldSpec::Rational => "Q".into(),
        FieldSpec::Prime(p) => format!("F{p}"),
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub target: Option<String>,
    pub field: FieldSpec,
    pub degree_bound: usize,
    pub search_bound: i64,
    pub bindings: Bindings,
    pub result: Value,
}

impl Report {
    pub fn to_json(&self) -> Value {
        json!({
            "schema": SCHEMA_VERSION,
            "command": self.command,
            "target": self.target,
            "engine": {
                "field": field_label(self.field),
                "degree_bound": self.degree_bound,
                "search_bound": self.search_bound,
            },
            "parameters": bindings_json(&self.bindings),
            "result": self.result,
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
                s.push('\n');
                s
            }
            Format::Text => self.to_text(),
        }
    }

    fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "command: {}", self.command).unwrap();
        if let Some(t) = &self.target {
            writeln!(out, "target: {t}").unwrap();
        }
        writeln!(
            out,
            "field: {}  degree bound: {}  search bound: {}",
            field_label(self.field),
            self.degree_bound,
            self.search_bound
        )
        .unwrap();
        for (k, v) in &self.bindings {
            writeln!(out, "{k} = {v}").unwrap();
        }
        if self.command.starts_with("sweep ") {
            out.push_str(&sweep_table(&self.result));
        } else {
            render_value(&mut out, &self.result, 0);
        }
        out
    }
}

pub fn bindings_json(b: &Bindings) -> Value {
    Value::Object(b.iter().map(|(k, v)| (k.clone(), json!(v.to_string()))).collect::<Map<_, _>>())
}

pub fn render_error(command: &str, e: &CliError, format: Format) -> String {
    match format {
        Format::Json => {
            let v = json!({ "schema": SCHEMA_VERSION, "command": command, "error": e.payload() });
            serde_json::to_string_pretty(&v).expect("serializable") + "\n"
        }
        Format::Text => format!("error ({}): {e}\n", e.kind()),
    }
}

fn scalar_text(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

/// Rows of equal-length string arrays.
fn as_matrix(v: &Value) -> Option<Vec<Vec<String>>> {
    let rows = v.as_array()?;
    if rows.is_empty() {
        return None;
    }
    let out: Vec<Vec<String>> = rows
        .iter()
        .map(|r| r.as_array().and_then(|r| r.iter().map(|x| x.as_str().map(String::from)).collect()))
        .collect::<Option<_>>()?;
    let width = out[0].len();
    out.iter().all(|r| r.len() == width).then_some(out)
}

fn aligned(rows: &[Vec<String>]) -> Vec<String> {
    let cols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|j| rows.iter().filter_map(|r| r.get(j)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    rows.iter()
        .map(|r| {
            let cells: Vec<String> =
                r.iter()
                    .enumerate()
                    .map(|(j, s)| {
                        if j + 1 == cols {
                            format!("{s:<w$}", w = widths[j])
                        } else {
                            format!("{s:>w$}", w = widths[j])
                        }
                    })
                    .collect();
            cells.join("  ").trim_end().to_string()
        })
        .collect()
}

fn render_value(out: &mut String, v: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    let Value::Object(map) = v else {
        writeln!(out, "{pad}{}", scalar_text(v).unwrap_or_else(|| v.to_string())).unwrap();
        return;
    };
    for (k, x) in map {
        if let Some(s) = scalar_text(x) {
            writeln!(out, "{pad}{k}: {s}").unwrap();
        } else if let Some(m) = as_matrix(x) {
            writeln!(out, "{pad}{k}:").unwrap();
            for line in aligned(&m) {
                writeln!(out, "{pad}  [ {line} ]").unwrap();
            }
        } else if let Value::Array(items) = x {
            if items.iter().all(|i| matches!(i, Value::Number(_))) {
                let parts: Vec<String> = items.iter().map(|i| i.to_string()).collect();
                writeln!(out, "{pad}{k}: {}", parts.join(" ")).unwrap();
            } else if items.iter().all(|i| scalar_text(i).is_some()) {
                writeln!(out, "{pad}{k}:").unwrap();
                for i in items {
                    writeln!(out, "{pad}  - {}", scalar_text(i).unwrap()).unwrap();
                }
            } else {
                writeln!(out, "{pad}{k}:").unwrap();
                for i in items {
                    render_value(out, i, indent + 2);
                }
            }
        } else {
            writeln!(out, "{pad}{k}:").unwrap();
            render_value(out, x, indent + 2);
        }
    }
}

/// One-cell summary of a command result.
pub fn summarize(result: &Value) -> String {
    let mut parts = vec![];
    if let Some(v) = result.get("verdict") {
        parts.push(v["status"].as_str().unwrap_or("?").to_string());
        if let Some(w) = v.get("witness").and_then(|w| w.as_array()) {
            parts.push(format!("witness {}", Value::Array(w.clone())));
        }
    }
    for key in ["det_r_is_nu", "calabi_yau", "hdet", "passed"] {
        if let Some(x) = result.get(key) {
            parts.push(format!("{key}={}", scalar_text(x).unwrap_or_default()));
        }
    }
    if let Some(n) = result.get("nakayama").and_then(|n| n.get("is_identity")) {
        parts.push(format!("nu_is_identity={n}"));
    }
    if let Some(h) = result.get("hilbert") {
        parts.push(format!("hilbert={h}"));
    }
    parts.join(", ")
}

fn sweep_table(result: &Value) -> String {
    let params: Vec<String> = result["parameters"]
        .as_array()
        .map(|a| a.iter().filter_map(|p| p.as_str().map(String::from)).collect())
        .unwrap_or_default();
    let mut rows = vec![params.iter().cloned().chain(["result".to_string()]).collect::<Vec<_>>()];
    for row in result["rows"].as_array().into_iter().flatten() {
        let mut cells: Vec<String> =
            params.iter().map(|p| row["parameters"][p].as_str().unwrap_or("").to_string()).collect();
        cells.push(match row.get("error") {
            Some(e) => format!("error: {}", e["kind"].as_str().unwrap_or("?")),
            None => summarize(&row["result"]),
        });
        rows.push(cells);
    }
    let mut out = String::new();
    for line in aligned(&rows) {
        writeln!(out, "{line}").unwrap();
    }
    writeln!(out, "{} row(s)", rows.len() - 1).unwrap();
    out
}
