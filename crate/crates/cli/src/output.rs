//! Output encodings for [`SweepResult`].

use bandharvest_core::{Error, Result, SweepResult};
use clap::ValueEnum;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    /// One JSON document with `metadata`, `columns` and `rows`.
    Structured,
}

/// Non-finite values are written as the strings `NaN`, `inf` and `-inf`.
fn number(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        Value::String(format!("{v}"))
    }
}

pub fn to_structured(r: &SweepResult) -> String {
    let meta: Map<String, Value> = r.metadata.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
    let rows: Vec<Value> = r.rows.iter().map(|row| Value::Array(row.iter().copied().map(number).collect())).collect();
    let doc = json!({ "metadata": meta, "columns": r.columns, "rows": rows });
    let mut s = serde_json::to_string_pretty(&doc).expect("json encoding of plain values");
    s.push('\n');
    s
}

pub fn from_structured(text: &str) -> Result<SweepResult> {
    let bad = |what: &str| Error::InvalidInput(format!("structured input: {what}"));
    let doc: Value = serde_json::from_str(text).map_err(|e| bad(&e.to_string()))?;
    let mut r = SweepResult::default();
    for (k, v) in doc["metadata"].as_object().ok_or_else(|| bad("missing metadata"))? {
        r.metadata.push((k.clone(), v.as_str().ok_or_else(|| bad("metadata values must be strings"))?.to_string()));
    }
    for c in doc["columns"].as_array().ok_or_else(|| bad("missing columns"))? {
        r.columns.push(c.as_str().ok_or_else(|| bad("column names must be strings"))?.to_string());
    }
    for row in doc["rows"].as_array().ok_or_else(|| bad("missing rows"))? {
        let values = row
            .as_array()
            .ok_or_else(|| bad("rows must be arrays"))?
            .iter()
            .map(|v| match v {
                Value::Number(n) => n.as_f64().ok_or_else(|| bad("number out of range")),
                Value::String(s) => s.parse::<f64>().map_err(|_| bad(&format!("bad number '{s}'"))),
                _ => Err(bad("row entries must be numbers")),
            })
            .collect::<Result<Vec<_>>>()?;
        r.push_row(values)?;
    }
    Ok(r)
}

pub fn encode(r: &SweepResult, format: Format) -> Result<String> {
    match format {
        Format::Csv => r.to_csv_string(),
        Format::Structured => Ok(to_structured(r)),
    }
}
