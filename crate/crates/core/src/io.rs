//! Reading and writing matrices and vectors.
//!
//! Matrices are accepted as headerless CSV (one row per line; entries may be
//! written as fractions such as `1/6`) or as JSON `{"n": 3, "rows": [[...]]}`.
//! The format is chosen from the content: anything starting with `{` is JSON.
//! Numbers are written with 12 significant digits.

use std::path::Path;

use serde::Deserialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::matrix::{validate_reciprocal, PositiveVector, ReciprocalMatrix, ToleranceConfig};

/// Round to 12 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Decimal text of `x` with 12 significant digits.
pub fn format_number(x: f64) -> String {
    round_sig(x).to_string()
}

/// Recursively round every float in a JSON value to 12 significant digits.
pub fn round_json(v: &mut Value) {
    match v {
        Value::Number(num) if num.is_f64() => {
            if let Some(r) = num.as_f64().and_then(|x| serde_json::Number::from_f64(round_sig(x))) {
                *num = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_json),
        Value::Object(map) => map.values_mut().for_each(round_json),
        _ => {}
    }
}

/// Pretty JSON with floats rounded to 12 significant digits.
pub fn to_json_string<T: serde::Serialize>(value: &T) -> Result<String> {
    let mut v = serde_json::to_value(value).map_err(|e| Error::Parse(e.to_string()))?;
    round_json(&mut v);
    serde_json::to_string_pretty(&v).map_err(|e| Error::Parse(e.to_string()))
}

fn parse_entry(field: &str) -> Result<f64> {
    let field = field.trim();
    let parsed = match field.split_once('/') {
        Some((num, den)) => num
            .trim()
            .parse::<f64>()
            .and_then(|a| den.trim().parse::<f64>().map(|b| a / b)),
        None => field.parse::<f64>(),
    };
    parsed.map_err(|_| Error::Parse(format!("cannot parse {field:?} as a number")))
}

fn csv_rows(text: &str) -> Result<Vec<Vec<f64>>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse(e.to_string()))?;
        if record.iter().all(|f| f.is_empty()) {
            continue;
        }
        rows.push(record.iter().map(parse_entry).collect::<Result<Vec<_>>>()?);
    }
    Ok(rows)
}

#[derive(Deserialize)]
struct JsonMatrix {
    n: Option<usize>,
    rows: Vec<Vec<f64>>,
}

/// Parse a reciprocal matrix from CSV or JSON text.
pub fn parse_matrix(text: &str, cfg: &ToleranceConfig) -> Result<ReciprocalMatrix> {
    let rows = if text.trim_start().starts_with('{') {
        let m: JsonMatrix = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if let Some(n) = m.n {
            if n != m.rows.len() {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: m.rows.len(),
                });
            }
        }
        m.rows
    } else {
        csv_rows(text)?
    };
    if rows.is_empty() {
        return Err(Error::Parse("matrix file contains no rows".into()));
    }
    validate_reciprocal(&rows, cfg)
}

pub fn read_matrix(path: &Path, cfg: &ToleranceConfig) -> Result<ReciprocalMatrix> {
    parse_matrix(&std::fs::read_to_string(path)?, cfg)
}

/// Parse a vector written one entry per line, as a single CSV row, or as a
/// JSON array.
pub fn parse_values(text: &str) -> Result<Vec<f64>> {
    if text.trim_start().starts_with('[') {
        return serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()));
    }
    let values: Vec<f64> = csv_rows(text)?.into_iter().flatten().collect();
    if values.is_empty() {
        return Err(Error::Parse("vector file contains no entries".into()));
    }
    Ok(values)
}

pub fn read_values(path: &Path) -> Result<Vec<f64>> {
    parse_values(&std::fs::read_to_string(path)?)
}

pub fn read_vector(path: &Path) -> Result<PositiveVector> {
    PositiveVector::new(read_values(path)?)
}

/// One entry per line.
pub fn format_vector(v: &[f64]) -> String {
    v.iter().map(|x| format_number(*x) + "\n").collect()
}

/// Headerless CSV, one row per line.
pub fn format_matrix_csv(a: &ReciprocalMatrix) -> String {
    (0..a.n())
        .map(|i| {
            let row: Vec<String> = a.row(i).iter().map(|x| format_number(*x)).collect();
            row.join(",") + "\n"
        })
        .collect()
}
