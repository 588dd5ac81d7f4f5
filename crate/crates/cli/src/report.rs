//! Output assembly: a configuration header followed by result fields,
//! rendered as `key: value` text or a single JSON object.

use std::io::Write;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

struct Field {
    key: String,
    value: Value,
    text: Option<String>,
}

/// What a subcommand produced, plus how it should exit.
pub struct Report {
    config: Vec<Field>,
    result: Vec<Field>,
    /// `Some(false)` maps to exit status 1.
    pub verdict: Option<bool>,
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

fn render_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".to_string(),
        other => other.to_string(),
    }
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut r = Report {
            config: Vec::new(),
            result: Vec::new(),
            verdict: None,
        };
        r.config("command", command);
        r
    }

    pub fn config(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.config.push(Field {
            key: key.to_string(),
            value: to_value(value),
            text: None,
        });
        self
    }

    pub fn field(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.result.push(Field {
            key: key.to_string(),
            value: to_value(value),
            text: None,
        });
        self
    }

    /// A field whose text rendering differs from its JSON value.
    pub fn field_as(&mut self, key: &str, value: impl Serialize, text: String) -> &mut Self {
        self.result.push(Field {
            key: key.to_string(),
            value: to_value(value),
            text: Some(text),
        });
        self
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> std::io::Result<()> {
        match format {
            Format::Text => {
                for f in &self.config {
                    writeln!(out, "# {}: {}", f.key, render_text(&f.value))?;
                }
                for f in &self.result {
                    let text = f.text.clone().unwrap_or_else(|| render_text(&f.value));
                    writeln!(out, "{}: {}", f.key, text)?;
                }
            }
            Format::Json => {
                let object = |fields: &[Field]| {
                    Value::Object(
                        fields
                            .iter()
                            .map(|f| (f.key.clone(), f.value.clone()))
                            .collect::<Map<_, _>>(),
                    )
                };
                let mut top = Map::new();
                top.insert("config".into(), object(&self.config));
                top.insert("result".into(), object(&self.result));
                serde_json::to_writer_pretty(&mut *out, &Value::Object(top))?;
                writeln!(out)?;
            }
        }
        Ok(())
    }
}
