//! The report document every command produces, and its two encodings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Bumped whenever the JSON layout changes.
pub const SCHEMA_VERSION: u32 = 1;

pub const TOOL: &str = "braidseed";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Match,
    Mismatch,
    Error,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Match => 0,
            Verdict::Mismatch => 1,
            Verdict::Error => 2,
        }
    }
}

/// A named comparison. Sections without a `right` value are informational
/// and always match.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Section {
    pub name: String,
    pub left: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<Value>,
    pub matches: bool,
}

impl Section {
    pub fn info(name: impl Into<String>, value: impl Serialize) -> Self {
        Section { name: name.into(), left: to_value(value), right: None, matches: true }
    }

    /// Matches when `left == right`.
    pub fn compare(name: impl Into<String>, left: impl Serialize, right: impl Serialize) -> Self {
        let (left, right) = (to_value(left), to_value(right));
        let matches = left == right;
        Section { name: name.into(), left, right: Some(right), matches }
    }

    /// A comparison whose outcome is decided by the caller.
    pub fn judged(name: impl Into<String>, left: impl Serialize, right: impl Serialize, matches: bool) -> Self {
        Section { name: name.into(), left: to_value(left), right: Some(to_value(right)), matches }
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorInfo {
    pub kind: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub tool: String,
    pub version: String,
    /// sha256 of each input, keyed by its role.
    pub inputs: BTreeMap<String, String>,
}

impl Default for Metadata {
    fn default() -> Self {
        Metadata { tool: TOOL.into(), version: env!("CARGO_PKG_VERSION").into(), inputs: BTreeMap::new() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub verdict: Verdict,
    pub sections: Vec<Section>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    pub metadata: Metadata,
}

impl Report {
    /// The verdict is `Mismatch` exactly when some section fails.
    pub fn from_sections(command: &str, sections: Vec<Section>, metadata: Metadata) -> Self {
        let verdict = if sections.iter().all(|s| s.matches) { Verdict::Match } else { Verdict::Mismatch };
        Report { schema: SCHEMA_VERSION, command: command.into(), verdict, sections, error: None, metadata }
    }

    pub fn error(command: &str, error: ErrorInfo, metadata: Metadata) -> Self {
        Report {
            schema: SCHEMA_VERSION,
            command: command.into(),
            verdict: Verdict::Error,
            sections: Vec::new(),
            error: Some(error),
            metadata,
        }
    }

    pub fn differing(&self) -> impl Iterator<Item = &Section> {
        self.sections.iter().filter(|s| !s.matches)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

/// Stable encodings: pretty JSON, or one fact per line for diffing.
pub fn emit_report(r: &Report, format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("report serializes");
            s.push('\n');
            s.into_bytes()
        }
        Format::Text => emit_text(r).into_bytes(),
    }
}

pub fn parse_report(bytes: &[u8]) -> Result<Report, serde_json::Error> {
    serde_json::from_slice(bytes)
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v).expect("value serializes")
}

fn emit_text(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:?} {}", r.verdict, r.command);
    if let Some(e) = &r.error {
        let _ = writeln!(out, "error {}: {}", e.kind, e.message);
        if let Some(f) = &e.field {
            let _ = writeln!(out, "field {f}");
        }
    }
    for s in &r.sections {
        let tag = match (&s.right, s.matches) {
            (None, _) => "info",
            (Some(_), true) => "ok",
            (Some(_), false) => "DIFF",
        };
        let _ = writeln!(out, "[{tag}] {}: {}", s.name, compact(&s.left));
        if let Some(right) = &s.right {
            if !s.matches {
                let _ = writeln!(out, "[{tag}] {} expected: {}", s.name, compact(right));
            }
        }
    }
    let _ = writeln!(out, "tool {} {} schema {}", r.metadata.tool, r.metadata.version, r.schema);
    for (k, v) in &r.metadata.inputs {
        let _ = writeln!(out, "input {k} sha256:{v}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_follows_sections() {
        let ok = Report::from_sections("x", vec![Section::compare("a", 1, 1)], Metadata::default());
        assert_eq!(ok.verdict, Verdict::Match);
        let bad = Report::from_sections("x", vec![Section::info("i", 0), Section::compare("a", 1, 2)], Metadata::default());
        assert_eq!(bad.verdict, Verdict::Mismatch);
        assert_eq!(bad.differing().count(), 1);
    }

    #[test]
    fn json_round_trip() {
        let r = Report::from_sections("x", vec![Section::compare("a", vec![1, 2], vec![1, 3])], Metadata::default());
        assert_eq!(parse_report(&emit_report(&r, Format::Json)).unwrap(), r);
    }

    #[test]
    fn text_marks_differences() {
        let r = Report::from_sections("x", vec![Section::compare("a", 1, 2)], Metadata::default());
        let text = String::from_utf8(emit_report(&r, Format::Text)).unwrap();
        assert!(text.starts_with("Mismatch x\n"));
        assert!(text.contains("[DIFF] a: 1\n[DIFF] a expected: 2\n"));
    }
}
