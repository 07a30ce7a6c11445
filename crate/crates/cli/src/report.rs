use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

/// Machine-readable result of one command. Field order is part of the format.
#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: Value,
    pub total: Option<f64>,
    pub breakdown: Value,
    pub decision: Value,
    pub trace: Value,
    /// Wall-clock time; null in bit-exact mode so reports are reproducible.
    pub timing_ms: Option<f64>,
}

impl Report {
    pub fn new(command: Value) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command,
            total: None,
            breakdown: Value::Null,
            decision: Value::Null,
            trace: Value::Null,
            timing_ms: None,
        }
    }

    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn emit(&self, out: Option<&Path>) -> std::io::Result<()> {
        let text = self.render();
        match out {
            Some(p) => std::fs::write(p, text),
            None => std::io::stdout().lock().write_all(text.as_bytes()),
        }
    }
}
