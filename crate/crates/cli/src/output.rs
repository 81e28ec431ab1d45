use std::io::Write;

use clap::ValueEnum;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Md,
}

/// A command result: a JSON document plus a flat table for CSV / Markdown.
pub struct Report {
    pub json: Value,
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

pub const SCHEMA_VERSION: u32 = 1;

impl Report {
    /// `fields` is a JSON object; `schema` is prepended.
    pub fn new(fields: Value, headers: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        let mut json = serde_json::Map::new();
        json.insert("schema".into(), SCHEMA_VERSION.into());
        if let Value::Object(map) = fields {
            json.extend(map);
        }
        Self {
            json: Value::Object(json),
            headers,
            rows,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("serializable");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.headers).expect("in-memory write");
                for row in &self.rows {
                    w.write_record(row).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
            }
            Format::Md => {
                let mut s = format!("| {} |\n", self.headers.join(" | "));
                s.push_str(&format!("|{}\n", "---|".repeat(self.headers.len())));
                for row in &self.rows {
                    s.push_str(&format!("| {} |\n", row.join(" | ")));
                }
                s
            }
        }
    }
}

pub fn emit(text: &str, output: Option<&std::path::Path>) -> std::io::Result<()> {
    match output {
        Some(path) => std::fs::write(path, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}
