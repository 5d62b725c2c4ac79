use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// A CSV table with a JSON rendering (array of row objects).
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push_numbers(&mut self, row: &[f64]) {
        self.rows.push(row.iter().map(|v| v.to_string()).collect());
    }

    pub fn csv_bytes(&self) -> Result<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        w.into_inner().context("flushing CSV")
    }

    pub fn json(&self) -> serde_json::Value {
        let rows = self.rows.iter().map(|r| {
            let obj = self.header.iter().zip(r).map(|(k, v)| {
                let val = v.parse::<f64>().ok().and_then(serde_json::Number::from_f64).map(serde_json::Value::Number);
                (k.clone(), val.unwrap_or_else(|| serde_json::Value::String(v.clone())))
            });
            serde_json::Value::Object(obj.collect())
        });
        serde_json::Value::Array(rows.collect())
    }
}

pub fn json_bytes<S: Serialize>(v: &S) -> Result<Vec<u8>> {
    let mut b = serde_json::to_vec_pretty(v)?;
    b.push(b'\n');
    Ok(b)
}

/// Writes to `path`, or to stdout when `path` is `None`.
pub fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            Ok(out.flush()?)
        }
    }
}

pub fn emit_table(path: Option<&Path>, format: Format, table: &Table) -> Result<()> {
    match format {
        Format::Csv => emit(path, &table.csv_bytes()?),
        Format::Json => emit(path, &json_bytes(&table.json())?),
    }
}
