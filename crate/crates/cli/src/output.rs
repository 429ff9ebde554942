use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::CliError;

pub const SCHEMA_VERSION: &str = "1";

/// Default directory for relative `--out` paths.
pub const OUT_DIR_ENV: &str = "SATAKE_OUT_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub version: &'static str,
    pub config: Value,
    pub results: Vec<Value>,
    pub pass: bool,
}

impl Report {
    pub fn new<C: Serialize>(config: &C) -> Result<Self, CliError> {
        Ok(Report {
            version: SCHEMA_VERSION,
            config: serde_json::to_value(config)?,
            results: Vec::new(),
            pass: true,
        })
    }

    /// Appends a row; a row with "pass": false fails the report.
    pub fn push<R: Serialize>(&mut self, row: &R) -> Result<(), CliError> {
        let v = serde_json::to_value(row)?;
        if v.get("pass") == Some(&Value::Bool(false)) {
            self.pass = false;
        }
        self.results.push(v);
        Ok(())
    }
}

pub fn resolve_path(p: &PathBuf) -> PathBuf {
    if p.is_relative() {
        if let Some(dir) = std::env::var_os(OUT_DIR_ENV) {
            return PathBuf::from(dir).join(p);
        }
    }
    p.clone()
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => {
            if s.contains([',', '"', '\n']) {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.clone()
            }
        }
        Value::Array(_) | Value::Object(_) => {
            let s = v.to_string();
            format!("\"{}\"", s.replace('"', "\"\""))
        }
        other => other.to_string(),
    }
}

fn write_csv<W: Write>(out: &mut W, rows: &[Value]) -> io::Result<()> {
    let empty = Map::new();
    let mut header: Vec<String> = Vec::new();
    for r in rows {
        for k in r.as_object().unwrap_or(&empty).keys() {
            if !header.contains(k) {
                header.push(k.clone());
            }
        }
    }
    writeln!(out, "{}", header.join(","))?;
    for r in rows {
        let obj = r.as_object().unwrap_or(&empty);
        let line: Vec<String> = header.iter().map(|k| obj.get(k).map(cell).unwrap_or_default()).collect();
        writeln!(out, "{}", line.join(","))?;
    }
    Ok(())
}

pub fn emit(report: &Report, format: Format, out: Option<&PathBuf>) -> Result<(), CliError> {
    let mut sink: Box<dyn Write> = match out {
        Some(p) => Box::new(BufWriter::new(File::create(resolve_path(p))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut sink, report)?;
            writeln!(sink)?;
        }
        Format::Csv => write_csv(&mut sink, &report.results)?,
    }
    sink.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn csv_quotes_and_unions_columns() {
        let rows = vec![json!({"a": 1, "b": "x,y"}), json!({"a": 2, "c": [1, 2]})];
        let mut buf = Vec::new();
        write_csv(&mut buf, &rows).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert_eq!(s, "a,b,c\n1,\"x,y\",\n2,,\"[1,2]\"\n");
    }

    #[test]
    fn failing_row_fails_report() {
        let mut r = Report::new(&json!({})).unwrap();
        r.push(&json!({"pass": true})).unwrap();
        assert!(r.pass);
        r.push(&json!({"pass": false, "x": 1})).unwrap();
        assert!(!r.pass);
    }
}
