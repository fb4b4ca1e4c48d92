//! Record emission in NDJSON, TSV or aligned plain text.

use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::{Map, Value};

pub const SCHEMA: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Pretty,
}

/// One output row: ordered fields plus the formula it evaluates.
#[derive(Clone, Debug, Default)]
pub struct Record {
    fields: Map<String, Value>,
}

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.fields.insert(key.to_string(), value.into());
        self
    }

    pub fn push(&mut self, key: &str, value: impl Into<Value>) {
        self.fields.insert(key.to_string(), value.into());
    }
}

/// Everything a subcommand produced. `ok` is false when a computed
/// verdict came out false.
#[derive(Debug)]
pub struct Report {
    pub command: &'static str,
    pub formula: &'static str,
    pub records: Vec<Record>,
    pub ok: bool,
}

impl Report {
    pub fn new(command: &'static str, formula: &'static str) -> Self {
        Report {
            command,
            formula,
            records: Vec::new(),
            ok: true,
        }
    }

    pub fn emit(&self, format: Format, out: &mut impl Write) -> io::Result<()> {
        match format {
            Format::Json => self.emit_json(out),
            Format::Tsv => self.emit_tsv(out),
            Format::Pretty => self.emit_pretty(out),
        }
    }

    fn emit_json(&self, out: &mut impl Write) -> io::Result<()> {
        for r in &self.records {
            let mut obj = Map::new();
            obj.insert("schema".into(), SCHEMA.into());
            obj.insert("command".into(), self.command.into());
            obj.extend(r.fields.clone());
            obj.insert("formula".into(), self.formula.into());
            serde_json::to_writer(&mut *out, &Value::Object(obj))?;
            writeln!(out)?;
        }
        Ok(())
    }

    fn emit_tsv(&self, out: &mut impl Write) -> io::Result<()> {
        let Some(first) = self.records.first() else {
            return Ok(());
        };
        let header: Vec<&str> = first.fields.keys().map(String::as_str).collect();
        writeln!(out, "{}", header.join("\t"))?;
        for r in &self.records {
            let cells: Vec<String> = header
                .iter()
                .map(|k| r.fields.get(*k).map(plain).unwrap_or_default())
                .collect();
            writeln!(out, "{}", cells.join("\t"))?;
        }
        Ok(())
    }

    fn emit_pretty(&self, out: &mut impl Write) -> io::Result<()> {
        if let [r] = self.records.as_slice() {
            if let Some(v) = r.fields.get("result") {
                return writeln!(out, "{}", plain(v));
            }
        }
        writeln!(out, "# {}", self.formula)?;
        let width = self
            .records
            .iter()
            .flat_map(|r| r.fields.keys())
            .map(String::len)
            .max()
            .unwrap_or(0);
        for (i, r) in self.records.iter().enumerate() {
            if self.records.len() > 1 && r.fields.len() > 6 {
                if i > 0 {
                    writeln!(out)?;
                }
                for (k, v) in &r.fields {
                    writeln!(out, "{k:>width$}  {}", plain(v))?;
                }
            } else {
                let line: Vec<String> = r
                    .fields
                    .iter()
                    .map(|(k, v)| format!("{k}={}", plain(v)))
                    .collect();
                writeln!(out, "{}", line.join("  "))?;
            }
        }
        Ok(())
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
