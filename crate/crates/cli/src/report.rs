use std::fmt;

use serde_json::{json, Map, Value};

/// Output of one command: JSON fields plus the human-readable rendering.
pub struct Report {
    pub command: &'static str,
    pub inputs: Value,
    pub result: Value,
    pub witnesses: Option<Value>,
    pub skipped: Option<Value>,
    pub table: String,
    /// False when a self-check inside the command failed.
    pub consistent: bool,
}

impl Report {
    pub fn new(command: &'static str, inputs: Value, result: Value, table: String) -> Self {
        Report {
            command,
            inputs,
            result,
            witnesses: None,
            skipped: None,
            table,
            consistent: true,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), json!(self.command));
        m.insert("inputs".into(), self.inputs.clone());
        m.insert("result".into(), self.result.clone());
        if let Some(w) = &self.witnesses {
            m.insert("witnesses".into(), w.clone());
        }
        if let Some(s) = &self.skipped {
            m.insert("skipped".into(), s.clone());
        }
        Value::Object(m)
    }

    pub fn exit_code(&self) -> u8 {
        if self.consistent {
            0
        } else {
            2
        }
    }
}

#[derive(Debug)]
pub enum Failure {
    Input(String),
    Internal(String),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) => f.write_str(m),
            Failure::Internal(m) => write!(f, "{m} (this is a bug)"),
        }
    }
}

impl From<cgsig::Error> for Failure {
    fn from(e: cgsig::Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

/// Left-aligned columns separated by two spaces.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<String>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&width)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.iter().map(|s| s.to_string()).collect());
    out += &line(width.iter().map(|w| "-".repeat(*w)).collect());
    for r in rows {
        out += &line(r.clone());
    }
    out
}
