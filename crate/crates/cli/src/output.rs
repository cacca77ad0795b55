use std::io::Write;

use serde_json::{json, Map, Number, Value};

use crate::args::Format;

/// A table for CSV and pretty output.
#[derive(Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

pub struct Report {
    pub command: &'static str,
    pub inputs: Value,
    pub results: Value,
    pub pass: Option<bool>,
    pub table: Table,
    /// Extra lines shown only in pretty output (timings and the like).
    pub notes: Vec<String>,
}

/// Formats a float at 15 significant digits.
pub fn fmt_f64(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let r: f64 = format!("{x:.14e}").parse().expect("round trip");
    format!("{r}")
}

/// Rounds every float to 15 significant digits; integers are left alone.
/// Object keys are already sorted since `serde_json::Map` is a `BTreeMap`.
pub fn canonical(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64");
            let r: f64 = format!("{x:.14e}").parse().expect("round trip");
            Number::from_f64(r)
                .map(Value::Number)
                .unwrap_or(Value::Null)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(canonical).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, canonical(v))).collect()),
        other => other,
    }
}

pub fn emit(report: &Report, format: Format, out: &mut impl Write) -> std::io::Result<()> {
    match format {
        Format::Json => {
            let mut top = Map::new();
            top.insert("schema".into(), json!(1));
            top.insert("command".into(), json!(report.command));
            top.insert("inputs".into(), report.inputs.clone());
            top.insert("results".into(), report.results.clone());
            if let Some(p) = report.pass {
                top.insert("pass".into(), json!(p));
            }
            let text = serde_json::to_string_pretty(&canonical(Value::Object(top)))?;
            writeln!(out, "{text}")
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(&report.table.header)?;
            for row in &report.table.rows {
                w.write_record(row)?;
            }
            w.flush()
        }
        Format::Pretty => {
            writeln!(out, "{}", report.command)?;
            let t = &report.table;
            let widths: Vec<usize> = (0..t.header.len())
                .map(|c| {
                    t.rows
                        .iter()
                        .map(|r| r.get(c).map_or(0, |s| s.chars().count()))
                        .chain([t.header[c].chars().count()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |cells: &[String]| {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(s, w)| format!("{s:<w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            if !t.header.is_empty() {
                writeln!(out, "  {}", line(&t.header))?;
                for row in &t.rows {
                    writeln!(out, "  {}", line(row))?;
                }
            }
            for note in &report.notes {
                writeln!(out, "  {note}")?;
            }
            if let Some(p) = report.pass {
                writeln!(out, "  {}", if p { "PASS" } else { "FAIL" })?;
            }
            Ok(())
        }
    }
}
