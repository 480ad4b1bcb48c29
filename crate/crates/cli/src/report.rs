//! Command results and their json, csv and text renderings.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use serde_json::{Map, Value};

/// Integers above this are emitted as decimal strings.
const JSON_SAFE: u64 = 1 << 53;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// What a command produced, plus the parameters it ran with.
#[derive(Debug)]
pub struct Report {
    command: String,
    params: Map<String, Value>,
    fields: Map<String, Value>,
    table: Option<(Vec<String>, Vec<Vec<Value>>)>,
    failed: bool,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            params: Map::new(),
            fields: Map::new(),
            table: None,
            failed: false,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn field(&mut self, key: &str, value: impl Into<Value>) {
        self.fields.insert(key.to_string(), value.into());
    }

    pub fn table(&mut self, header: &[&str], rows: Vec<Vec<Value>>) {
        self.table = Some((header.iter().map(|h| h.to_string()).collect(), rows));
    }

    /// Records a PASS/FAIL verdict; FAIL sets a non-zero exit status.
    pub fn verdict(&mut self, pass: bool) {
        self.field("verdict", if pass { "PASS" } else { "FAIL" });
        self.failed = !pass;
    }

    pub fn failed(&self) -> bool {
        self.failed
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.json(),
            Format::Csv => self.csv(),
            Format::Text => self.text(),
        }
    }

    fn json(&self) -> String {
        let mut out = Map::new();
        out.insert("command".into(), self.command.clone().into());
        out.insert("params".into(), Value::Object(self.params.clone()));
        out.extend(self.fields.clone());
        if let Some((header, rows)) = &self.table {
            let rows = rows
                .iter()
                .map(|r| Value::Object(header.iter().cloned().zip(r.iter().cloned()).collect()))
                .collect();
            out.insert("rows".into(), Value::Array(rows));
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(out)).expect("json values serialize");
        s.push('\n');
        s
    }

    fn header_line(&self) -> String {
        let mut s = format!("# {}", self.command);
        for (k, v) in &self.params {
            let _ = write!(s, " {k}={}", plain(v));
        }
        s
    }

    fn csv(&self) -> String {
        let mut s = self.header_line();
        s.push('\n');
        match &self.table {
            Some((header, rows)) => {
                s.push_str(&header.join(","));
                s.push('\n');
                for row in rows {
                    let cells: Vec<String> = row.iter().map(|v| csv_cell(&plain(v))).collect();
                    s.push_str(&cells.join(","));
                    s.push('\n');
                }
            }
            None => {
                s.push_str("key,value\n");
                for (k, v) in &self.fields {
                    let _ = writeln!(s, "{k},{}", csv_cell(&plain(v)));
                }
            }
        }
        s
    }

    fn text(&self) -> String {
        let mut s = self.header_line();
        s.push('\n');
        for (k, v) in &self.fields {
            let _ = writeln!(s, "{k}: {}", plain(v));
        }
        if let Some((header, rows)) = &self.table {
            s.push_str(&header.join("\t"));
            s.push('\n');
            for row in rows {
                let cells: Vec<String> = row.iter().map(plain).collect();
                s.push_str(&cells.join("\t"));
                s.push('\n');
            }
        }
        s
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// A number, or its decimal string once it passes 2^53.
pub fn big(v: &BigUint) -> Value {
    match u64::try_from(v) {
        Ok(x) if x <= JSON_SAFE => Value::from(x),
        _ => Value::String(v.to_string()),
    }
}

pub fn big_signed(v: &BigInt) -> Value {
    match i64::try_from(v) {
        Ok(x) if x.unsigned_abs() <= JSON_SAFE => Value::from(x),
        _ => Value::String(v.to_string()),
    }
}
