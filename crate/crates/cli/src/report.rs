//! Deterministic structured-text reports.
//!
//! A report is a sequence of `key: value` lines with a fixed field order:
//! `command`, `version`, `inputs-digest`, then the command payload. Runs
//! with identical inputs and flags produce byte-identical output; nothing
//! time- or host-dependent is ever emitted.

use sha2::{Digest, Sha256};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub struct Report {
    lines: Vec<String>,
}

impl Report {
    /// Starts a report; `digest_parts` feed the content hash that ties the
    /// report to its exact inputs (flag values and input file bytes).
    pub fn new(command: &str, digest_parts: &[&str]) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(command.as_bytes());
        for part in digest_parts {
            hasher.update([0u8]);
            hasher.update(part.as_bytes());
        }
        let digest = hasher.finalize();
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        Self {
            lines: vec![
                format!("command: {command}"),
                format!("version: {VERSION}"),
                format!("inputs-digest: {hex}"),
            ],
        }
    }

    pub fn field(&mut self, key: &str, value: impl std::fmt::Display) -> &mut Self {
        self.lines.push(format!("{key}: {value}"));
        self
    }

    /// Appends a raw block (e.g. a point-set section) after the fields.
    pub fn block(&mut self, text: &str) -> &mut Self {
        self.lines.push(text.trim_end_matches('\n').to_string());
        self
    }

    pub fn render(&self) -> String {
        let mut out = self.lines.join("\n");
        out.push('\n');
        out
    }
}
