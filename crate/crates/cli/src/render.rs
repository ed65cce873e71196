//! Report output: JSON by default, or flat `key: value` text.

use std::io::Write;

use anyhow::Result;
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
}

pub fn emit<T: Serialize>(out: &mut dyn Write, format: Format, report: &T) -> Result<()> {
    let value = serde_json::to_value(report)?;
    match format {
        Format::Json | Format::Csv => {
            serde_json::to_writer_pretty(&mut *out, &value)?;
            writeln!(out)?;
        }
        Format::Text => write_text(out, &value)?,
    }
    Ok(())
}

fn write_text(out: &mut dyn Write, value: &Value) -> Result<()> {
    match value {
        Value::Object(map) => {
            for (key, v) in map {
                match v {
                    Value::String(s) => writeln!(out, "{key}: {s}")?,
                    other => writeln!(out, "{key}: {other}")?,
                }
            }
        }
        other => writeln!(out, "{other}")?,
    }
    Ok(())
}
