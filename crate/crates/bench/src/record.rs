//! Benchmark records and their CSV / JSON encodings.
//!
//! Reals are written with 17 significant digits so every value survives a
//! round trip. A failed evaluation is written with its error class (e.g.
//! `precision-failure`) in the `value` column and `NaN` as its error.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};
use sphconv_core::{Error, ErrorClass, Method, Result};

/// Column order of the CSV encoding.
pub const CSV_HEADER: [&str; 9] = [
    "method",
    "n",
    "alpha",
    "value",
    "reference",
    "abs_error",
    "seconds",
    "digits",
    "truncation",
];

/// What one evaluation produced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Outcome {
    Value(f64),
    Failure(ErrorClass),
}

/// One (method, N, α) cell of a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub method: Method,
    pub n: u32,
    pub alpha: f64,
    pub outcome: Outcome,
    /// NaN when the reference itself could not be computed.
    pub reference: f64,
    pub seconds: f64,
    pub digits: u32,
    pub truncation: usize,
}

impl BenchRecord {
    pub fn value(&self) -> Option<f64> {
        match self.outcome {
            Outcome::Value(v) => Some(v),
            Outcome::Failure(_) => None,
        }
    }

    pub fn failure(&self) -> Option<ErrorClass> {
        match self.outcome {
            Outcome::Value(_) => None,
            Outcome::Failure(c) => Some(c),
        }
    }

    /// |value − reference|, NaN for failures.
    pub fn abs_error(&self) -> f64 {
        self.value()
            .map_or(f64::NAN, |v| (v - self.reference).abs())
    }
}

fn real(v: f64) -> String {
    format!("{v:.16e}")
}

fn parse_real(field: &str, column: &str) -> Result<f64> {
    field.trim().parse().map_err(|_| {
        Error::Domain(format!(
            "column '{column}': cannot parse '{field}' as a number"
        ))
    })
}

fn parse_method(s: &str) -> Result<Method> {
    s.parse()
}

fn parse_outcome(s: &str) -> Result<Outcome> {
    if let Ok(v) = s.trim().parse::<f64>() {
        return Ok(Outcome::Value(v));
    }
    ErrorClass::parse(s.trim())
        .map(Outcome::Failure)
        .ok_or_else(|| {
            Error::Domain(format!(
                "column 'value': '{s}' is neither a number nor an error class"
            ))
        })
}

fn render_outcome(o: &Outcome) -> String {
    match o {
        Outcome::Value(v) => real(*v),
        Outcome::Failure(c) => c.as_str().to_string(),
    }
}

fn csv_error(e: csv::Error) -> Error {
    Error::Domain(format!("csv: {e}"))
}

pub fn write_csv<W: Write>(records: &[BenchRecord], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_HEADER).map_err(csv_error)?;
    for r in records {
        w.write_record([
            r.method.name().to_string(),
            r.n.to_string(),
            real(r.alpha),
            render_outcome(&r.outcome),
            real(r.reference),
            real(r.abs_error()),
            real(r.seconds),
            r.digits.to_string(),
            r.truncation.to_string(),
        ])
        .map_err(csv_error)?;
    }
    w.flush().map_err(|e| Error::Domain(format!("csv: {e}")))
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<BenchRecord>> {
    let mut rd = csv::Reader::from_reader(input);
    let header = rd.headers().map_err(csv_error)?.clone();
    if header.iter().ne(CSV_HEADER.iter().copied()) {
        return Err(Error::Domain(format!(
            "csv header '{}' does not match '{}'",
            header.iter().collect::<Vec<_>>().join(","),
            CSV_HEADER.join(",")
        )));
    }
    let mut out = Vec::new();
    for row in rd.records() {
        let row = row.map_err(csv_error)?;
        let int = |i: usize| -> Result<u64> {
            row[i].parse().map_err(|_| {
                Error::Domain(format!(
                    "column '{}': bad integer '{}'",
                    CSV_HEADER[i], &row[i]
                ))
            })
        };
        out.push(BenchRecord {
            method: parse_method(&row[0])?,
            n: int(1)? as u32,
            alpha: parse_real(&row[2], "alpha")?,
            outcome: parse_outcome(&row[3])?,
            reference: parse_real(&row[4], "reference")?,
            seconds: parse_real(&row[6], "seconds")?,
            digits: int(7)? as u32,
            truncation: int(8)? as usize,
        });
    }
    Ok(out)
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum JsonValue {
    Number(f64),
    Failure(String),
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonRow {
    method: String,
    n: u32,
    alpha: f64,
    value: JsonValue,
    reference: Option<f64>,
    abs_error: Option<f64>,
    seconds: f64,
    digits: u32,
    truncation: usize,
}

fn finite(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}

/// JSON array with the CSV field names; NaN becomes `null`.
pub fn to_json(records: &[BenchRecord]) -> Result<String> {
    let rows: Vec<JsonRow> = records
        .iter()
        .map(|r| JsonRow {
            method: r.method.name().to_string(),
            n: r.n,
            alpha: r.alpha,
            value: match r.outcome {
                Outcome::Value(v) => JsonValue::Number(v),
                Outcome::Failure(c) => JsonValue::Failure(c.as_str().to_string()),
            },
            reference: finite(r.reference),
            abs_error: finite(r.abs_error()),
            seconds: r.seconds,
            digits: r.digits,
            truncation: r.truncation,
        })
        .collect();
    serde_json::to_string_pretty(&rows).map_err(|e| Error::Domain(format!("json: {e}")))
}

pub fn from_json(text: &str) -> Result<Vec<BenchRecord>> {
    let rows: Vec<JsonRow> =
        serde_json::from_str(text).map_err(|e| Error::Domain(format!("json: {e}")))?;
    rows.into_iter()
        .map(|r| {
            let outcome = match r.value {
                JsonValue::Number(v) => Outcome::Value(v),
                JsonValue::Failure(s) => parse_outcome(&s)?,
            };
            Ok(BenchRecord {
                method: parse_method(&r.method)?,
                n: r.n,
                alpha: r.alpha,
                outcome,
                reference: r.reference.unwrap_or(f64::NAN),
                seconds: r.seconds,
                digits: r.digits,
                truncation: r.truncation,
            })
        })
        .collect()
}
