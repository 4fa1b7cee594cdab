//! Tabular artifacts written as CSV or JSON.
//!
//! Every command produces one [`Table`]. The CSV form is a header row followed
//! by one record per row; the JSON form is an object with the command name,
//! the column list and an array of row objects keyed by the same column names.
//! Floating-point values are written with 17 significant digits; non-finite
//! values become empty CSV fields and JSON `null`.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Float(f64),
    Int(u64),
    Bool(bool),
    Text(String),
    Missing,
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Float(v)
    }
}

impl From<u64> for Value {
    fn from(v: u64) -> Self {
        Value::Int(v)
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.to_string())
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Text(v)
    }
}

impl<T: Into<Value>> From<Option<T>> for Value {
    fn from(v: Option<T>) -> Self {
        v.map_or(Value::Missing, Into::into)
    }
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn float(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub command: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(command: &'static str, columns: &[&'static str]) -> Self {
        Table {
            command,
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("writing to memory");
        for row in &self.rows {
            let fields = row.iter().map(|v| match v {
                Value::Float(x) if x.is_finite() => float(*x),
                Value::Float(_) | Value::Missing => String::new(),
                Value::Int(i) => i.to_string(),
                Value::Bool(b) => b.to_string(),
                Value::Text(s) => s.clone(),
            });
            w.write_record(fields).expect("writing to memory");
        }
        let bytes = w.into_inner().expect("flushing to memory");
        String::from_utf8(bytes).expect("csv output is utf-8")
    }

    fn to_json(&self) -> String {
        let quote = |s: &str| serde_json::to_string(s).expect("string serialises");
        let mut out = String::new();
        let columns: Vec<String> = self.columns.iter().map(|c| quote(c)).collect();
        let _ = write!(
            out,
            "{{\n  \"command\": {},\n  \"columns\": [{}],\n  \"rows\": [",
            quote(self.command),
            columns.join(", ")
        );
        for (i, row) in self.rows.iter().enumerate() {
            out.push_str(if i == 0 { "\n    {" } else { ",\n    {" });
            for (k, (name, v)) in columns.iter().zip(row).enumerate() {
                if k > 0 {
                    out.push_str(", ");
                }
                let value = match v {
                    Value::Float(x) if x.is_finite() => float(*x),
                    Value::Float(_) | Value::Missing => "null".to_string(),
                    Value::Int(i) => i.to_string(),
                    Value::Bool(b) => b.to_string(),
                    Value::Text(s) => quote(s),
                };
                let _ = write!(out, "{name}: {value}");
            }
            out.push('}');
        }
        out.push_str(if self.rows.is_empty() {
            "]\n}\n"
        } else {
            "\n  ]\n}\n"
        });
        out
    }
}
