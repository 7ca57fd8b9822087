use std::io::{self, Write};

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Everything one command prints.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub params: Map<String, Value>,
    pub results: Vec<Value>,
    pub errors: Vec<Value>,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report {
            command,
            params: Map::new(),
            results: Vec::new(),
            errors: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.params.insert(key.to_string(), to_value(value));
        self
    }

    pub fn push(&mut self, record: impl Serialize) {
        self.results.push(to_value(record));
    }

    pub fn error(&mut self, context: impl Into<String>, message: impl ToString) {
        let mut e = Map::new();
        e.insert("context".into(), Value::String(context.into()));
        e.insert("message".into(), Value::String(message.to_string()));
        self.errors.push(Value::Object(e));
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> io::Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, self)?;
                writeln!(out)
            }
            Format::Csv => self.write_csv(out),
            Format::Text => self.write_text(out),
        }
    }

    fn write_csv(&self, out: &mut impl Write) -> io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let header: Vec<String> = match self.results.first() {
            Some(Value::Object(map)) => map.keys().cloned().collect(),
            Some(_) => vec!["value".into()],
            None => Vec::new(),
        };
        if !header.is_empty() {
            w.write_record(&header)?;
        }
        for r in &self.results {
            let row: Vec<String> = match r {
                Value::Object(map) => header.iter().map(|k| cell(map.get(k))).collect(),
                other => vec![cell(Some(other))],
            };
            w.write_record(&row)?;
        }
        w.flush()?;
        for e in &self.errors {
            eprintln!("error: {}", cell(Some(e)));
        }
        Ok(())
    }

    fn write_text(&self, out: &mut impl Write) -> io::Result<()> {
        let params: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| format!("{k} = {}", cell(Some(v))))
            .collect();
        writeln!(out, "{} ({})", self.command, params.join(", "))?;
        for r in &self.results {
            writeln!(out)?;
            match r {
                Value::Object(map) => {
                    let width = map.keys().map(|k| k.len()).max().unwrap_or(0);
                    for (k, v) in map {
                        writeln!(out, "  {k:<width$}  {}", cell(Some(v)))?;
                    }
                }
                other => writeln!(out, "  {}", cell(Some(other)))?,
            }
        }
        for e in &self.errors {
            writeln!(out)?;
            writeln!(out, "  error: {}", cell(Some(e)))?;
        }
        Ok(())
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("records serialize to JSON")
}

/// Scalars as themselves, polynomials by their text, anything else as JSON.
fn cell(v: Option<&Value>) -> String {
    match v {
        None | Some(Value::Null) => String::new(),
        Some(Value::String(s)) => s.clone(),
        Some(Value::Object(map)) if map.contains_key("poly_text") => cell(map.get("poly_text")),
        Some(Value::Object(map)) if map.contains_key("message") => {
            format!("{}: {}", cell(map.get("context")), cell(map.get("message")))
        }
        Some(other) => other.to_string(),
    }
}
