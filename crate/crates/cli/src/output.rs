//! Tabular output as CSV, JSON or plain `n value` lines.

use std::io::Write;

use clap::ValueEnum;
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::Failure;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    /// Space separated values without a header
    Bfile,
    /// Human-readable report
    Text,
}

pub struct Table {
    command: &'static str,
    header: Vec<&'static str>,
    rows: Vec<Vec<Value>>,
}

/// A float cell; non-finite values become strings so JSON stays valid.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or_else(|| Value::from(x.to_string()))
}

/// Big integers are written as decimal strings so that no reader rounds them.
pub fn big(x: &BigUint) -> Value {
    Value::from(x.to_string())
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

impl Table {
    pub fn new(command: &'static str, header: &[&'static str]) -> Self {
        Table { command, header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn emit(&self, format: Format, out: &mut impl Write) -> Result<(), Failure> {
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                let io = |e: csv::Error| Failure::Io(e.to_string());
                w.write_record(&self.header).map_err(io)?;
                for row in &self.rows {
                    w.write_record(row.iter().map(plain)).map_err(io)?;
                }
                w.flush()?;
            }
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|r| Value::Object(self.header.iter().map(|h| h.to_string()).zip(r.iter().cloned()).collect()))
                    .collect();
                let doc = json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": self.command,
                    "columns": self.header,
                    "rows": rows,
                });
                serde_json::to_writer_pretty(&mut *out, &doc).map_err(|e| Failure::Io(e.to_string()))?;
                writeln!(out)?;
            }
            Format::Bfile | Format::Text => {
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(plain).collect();
                    writeln!(out, "{}", cells.join(" "))?;
                }
            }
        }
        Ok(())
    }
}
