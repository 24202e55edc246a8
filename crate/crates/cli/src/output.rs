//! Records and their CSV / JSON encodings. Floats use shortest round-trip
//! formatting in both encodings.

use serde::Serialize;

use fracgreen::params::GreenValue;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format '{s}' (csv or json)")),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OutputRecord {
    pub alpha: f64,
    pub c: f64,
    pub x: f64,
    pub value: f64,
    pub error_bound: f64,
    pub method: String,
    pub rigorous: bool,
}

impl OutputRecord {
    pub fn new(alpha: f64, c: f64, x: f64, v: &GreenValue) -> Self {
        Self {
            alpha,
            c,
            x,
            value: v.value,
            error_bound: v.error_bound,
            method: v.method.name().to_string(),
            rigorous: v.rigorous,
        }
    }
}

/// A table row; failed evaluations keep their coordinates and carry the error text.
#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub alpha: f64,
    pub c: f64,
    pub x: f64,
    pub value: Option<f64>,
    pub error_bound: Option<f64>,
    pub method: Option<String>,
    pub rigorous: Option<bool>,
    pub error: Option<String>,
}

pub fn to_csv<T: Serialize>(rows: &[T]) -> Result<String, String> {
    let mut w = csv::WriterBuilder::new().has_headers(true).from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| e.to_string())?;
    }
    let bytes = w.into_inner().map_err(|e| e.to_string())?;
    String::from_utf8(bytes).map_err(|e| e.to_string())
}

/// CSV with an explicit header, for when there may be no rows.
pub fn to_csv_with_header<T: Serialize>(header: &[&str], rows: &[T]) -> Result<String, String> {
    if rows.is_empty() {
        return Ok(format!("{}\n", header.join(",")));
    }
    to_csv(rows)
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String, String> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| e.to_string())
}

pub const RECORD_HEADER: [&str; 7] = ["alpha", "c", "x", "value", "error_bound", "method", "rigorous"];
pub const TABLE_HEADER: [&str; 8] = ["alpha", "c", "x", "value", "error_bound", "method", "rigorous", "error"];
