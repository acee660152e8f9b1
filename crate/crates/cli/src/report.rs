//! The report envelope shared by every subcommand, and its JSON and table renderings.

use std::collections::BTreeMap;

use serde_json::{json, Value};
use splitcheck::poscalc::Provenance;

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: &'static str,
    pub payload: Value,
    /// Anchors of the results the payload relies on. Empty only for plumbing queries.
    pub citations: Vec<String>,
    /// Provenance of every number in the payload, keyed by its path.
    pub provenance: BTreeMap<String, Provenance>,
}

impl Report {
    /// Builds a report, tagging every numeric leaf with `default` unless a longer
    /// matching prefix in `overrides` says otherwise.
    pub fn new(
        command: &'static str,
        payload: Value,
        citations: Vec<String>,
        default: Provenance,
        overrides: &[(String, Provenance)],
    ) -> Self {
        let mut provenance = BTreeMap::new();
        let mut paths = Vec::new();
        numeric_paths(&payload, "", &mut paths);
        for path in paths {
            let tag = overrides
                .iter()
                .filter(|(prefix, _)| covers(prefix, &path))
                .max_by_key(|(prefix, _)| prefix.len())
                .map_or(default, |(_, tag)| *tag);
            provenance.insert(path, tag);
        }
        let mut seen = Vec::new();
        for c in citations {
            if !seen.contains(&c) {
                seen.push(c);
            }
        }
        Report {
            command,
            payload,
            citations: seen,
            provenance,
        }
    }

    pub fn to_value(&self) -> Value {
        let provenance: BTreeMap<&str, &str> = self
            .provenance
            .iter()
            .map(|(k, v)| (k.as_str(), v.as_str()))
            .collect();
        json!({
            "command": self.command,
            "payload": self.payload,
            "citations": self.citations,
            "provenance": provenance,
        })
    }
}

fn covers(prefix: &str, path: &str) -> bool {
    path == prefix
        || (path.starts_with(prefix)
            && matches!(path.as_bytes().get(prefix.len()), Some(b'.') | Some(b'[')))
}

/// Paths of the numeric leaves. Arrays holding no objects count as a single leaf.
fn numeric_paths(v: &Value, path: &str, out: &mut Vec<String>) {
    match v {
        Value::Number(_) => out.push(path.to_string()),
        Value::Object(map) => {
            for (k, child) in map {
                let p = if path.is_empty() {
                    k.clone()
                } else {
                    format!("{path}.{k}")
                };
                numeric_paths(child, &p, out);
            }
        }
        Value::Array(items) if items.iter().any(Value::is_object) => {
            for (i, child) in items.iter().enumerate() {
                numeric_paths(child, &format!("{path}[{i}]"), out);
            }
        }
        Value::Array(_) if contains_number(v) => out.push(path.to_string()),
        _ => {}
    }
}

fn contains_number(v: &Value) -> bool {
    match v {
        Value::Number(_) => true,
        Value::Array(items) => items.iter().any(contains_number),
        Value::Object(map) => map.values().any(contains_number),
        _ => false,
    }
}

/// Canonical JSON: sorted keys, two-space indentation, trailing newline.
pub fn emit_json(report: &Report) -> String {
    let mut s =
        serde_json::to_string_pretty(&report.to_value()).expect("a JSON value always serializes");
    s.push('\n');
    s
}

/// Human-readable rendering. Nested objects are flattened to dotted keys and arrays of
/// objects become column tables.
pub fn emit_table(report: &Report) -> String {
    let mut scalars: Vec<(String, String)> = vec![("command".into(), report.command.into())];
    let mut tables: Vec<(String, Vec<BTreeMap<String, Value>>)> = Vec::new();
    flatten(&report.payload, "", &mut scalars, &mut tables);
    let citations = if report.citations.is_empty() {
        "-".to_string()
    } else {
        report.citations.join(", ")
    };
    scalars.push(("citations".into(), citations));

    let width = scalars
        .iter()
        .map(|(k, _)| k.chars().count())
        .max()
        .unwrap_or(0);
    let mut out = String::new();
    for (k, v) in &scalars {
        out.push_str(&format!("{k:<width$}  {v}\n"));
    }
    for (name, rows) in &tables {
        out.push('\n');
        out.push_str(&format!("{name}:\n"));
        out.push_str(&column_table(rows));
    }
    out
}

fn flatten(
    v: &Value,
    path: &str,
    scalars: &mut Vec<(String, String)>,
    tables: &mut Vec<(String, Vec<BTreeMap<String, Value>>)>,
) {
    match v {
        Value::Object(map) if !map.is_empty() => {
            for (k, child) in map {
                let p = if path.is_empty() {
                    k.clone()
                } else {
                    format!("{path}.{k}")
                };
                flatten(child, &p, scalars, tables);
            }
        }
        Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_object) => {
            let rows = items
                .iter()
                .map(|item| item.as_object().unwrap().clone().into_iter().collect())
                .collect();
            tables.push((path.to_string(), rows));
        }
        _ => scalars.push((path.to_string(), cell(v))),
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let inner: Vec<String> = items.iter().map(cell).collect();
            format!("[{}]", inner.join(", "))
        }
        Value::Object(map) => {
            let inner: Vec<String> = map
                .iter()
                .map(|(k, v)| format!("{k}={}", cell(v)))
                .collect();
            format!("{{{}}}", inner.join(", "))
        }
        other => other.to_string(),
    }
}

fn column_table(rows: &[BTreeMap<String, Value>]) -> String {
    let mut columns: Vec<&String> = Vec::new();
    for row in rows {
        for k in row.keys() {
            if !columns.contains(&k) {
                columns.push(k);
            }
        }
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|row| {
            columns
                .iter()
                .map(|c| row.get(*c).map_or("-".to_string(), cell))
                .collect()
        })
        .collect();
    let widths: Vec<usize> = columns
        .iter()
        .enumerate()
        .map(|(i, c)| {
            cells
                .iter()
                .map(|r| r[i].chars().count())
                .chain([c.chars().count()])
                .max()
                .unwrap()
        })
        .collect();
    let line = |items: Vec<&str>| {
        let padded: Vec<String> = items
            .iter()
            .zip(&widths)
            .map(|(s, &w)| format!("{s:<w$}"))
            .collect();
        format!("  {}\n", padded.join("  ").trim_end())
    };
    let mut out = line(columns.iter().map(|c| c.as_str()).collect());
    for r in &cells {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}
