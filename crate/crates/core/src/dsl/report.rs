use serde::{Deserialize, Serialize};
use std::fmt::Write;

pub const REPORT_VERSION: u32 = 1;

/// One executed command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub cmd: String,
    /// True iff the command succeeded and its residual, if any, is `"0"`.
    pub ok: bool,
    pub residual: Option<String>,
    pub value: Option<String>,
    pub ms: f64,
}

impl Record {
    pub fn new(cmd: &str, residual: Option<String>, value: Option<String>, ms: f64) -> Self {
        let ok = residual.as_deref().is_none_or(|r| r == "0");
        Record {
            cmd: cmd.into(),
            ok,
            residual,
            value,
            ms,
        }
    }

    pub fn failed(cmd: &str, error: String, ms: f64) -> Self {
        Record {
            cmd: cmd.into(),
            ok: false,
            residual: None,
            value: Some(error),
            ms,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: u32,
    pub commands: Vec<Record>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Text,
}

impl Report {
    pub fn new(commands: Vec<Record>) -> Self {
        Report {
            version: REPORT_VERSION,
            commands,
        }
    }

    pub fn all_ok(&self) -> bool {
        self.commands.iter().all(|r| r.ok)
    }

    /// Compact JSON, one line, fields in schema order.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("leafnorm report v{}\n", self.version);
        for r in &self.commands {
            let _ = writeln!(out, "{} {}", if r.ok { "[ok]  " } else { "[FAIL]" }, r.cmd);
            if let Some(res) = &r.residual {
                let _ = writeln!(out, "    residual: {res}");
            }
            if let Some(v) = &r.value {
                let _ = writeln!(out, "    value: {v}");
            }
            if r.ms != 0.0 {
                let _ = writeln!(out, "    ms: {:.3}", r.ms);
            }
        }
        out
    }

    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Text => self.to_text(),
        }
    }
}
