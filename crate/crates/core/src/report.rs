//! Verification reports: a flat list of checked records plus certificates.
//!
//! JSON layout (`schema` 1):
//!
//! ```text
//! {
//!   "schema": 1,
//!   "tool": "expspec",
//!   "version": "<crate version>",
//!   "config": { ... },
//!   "records": [ {"name", "citation", "measured", "comparison", "threshold", "pass"} ],
//!   "certificates": [ {"subject", "verdict", "evidence", "assumptions"} ],
//!   "deduction": [ "<step>", ... ],
//!   "notes": [ "<remark>", ... ],
//!   "overall_pass": bool
//! }
//! ```
//!
//! Non-finite measurements serialise as `null`. Nothing in a report depends on
//! wall-clock time or thread scheduling, so identical configurations give
//! byte-identical output.

use serde::Serialize;

use crate::homotopy::{EvidenceBound, HomotopyCertificate};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_NAME: &str = "expspec";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Comparison {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">=")]
    AtLeast,
    #[serde(rename = ">")]
    Above,
}

impl Comparison {
    pub fn symbol(self) -> &'static str {
        match self {
            Comparison::AtMost => "<=",
            Comparison::AtLeast => ">=",
            Comparison::Above => ">",
        }
    }

    pub fn holds(self, measured: f64, threshold: f64) -> bool {
        match self {
            Comparison::AtMost => measured <= threshold,
            Comparison::AtLeast => measured >= threshold,
            Comparison::Above => measured > threshold,
        }
    }

    fn from_symbol(s: &str) -> Comparison {
        match s {
            "<=" => Comparison::AtMost,
            ">=" => Comparison::AtLeast,
            _ => Comparison::Above,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub name: String,
    /// The mathematical statement this record checks.
    pub citation: String,
    pub measured: f64,
    pub comparison: Comparison,
    pub threshold: f64,
    pub pass: bool,
}

impl Record {
    pub fn new(
        name: impl Into<String>,
        citation: impl Into<String>,
        measured: f64,
        comparison: Comparison,
        threshold: f64,
    ) -> Self {
        Record {
            name: name.into(),
            citation: citation.into(),
            measured,
            comparison,
            threshold,
            // NaN fails every comparison
            pass: comparison.holds(measured, threshold),
        }
    }

    pub fn at_most(name: impl Into<String>, citation: impl Into<String>, measured: f64, threshold: f64) -> Self {
        Record::new(name, citation, measured, Comparison::AtMost, threshold)
    }

    pub fn at_least(name: impl Into<String>, citation: impl Into<String>, measured: f64, threshold: f64) -> Self {
        Record::new(name, citation, measured, Comparison::AtLeast, threshold)
    }

    pub fn above(name: impl Into<String>, citation: impl Into<String>, measured: f64, threshold: f64) -> Self {
        Record::new(name, citation, measured, Comparison::Above, threshold)
    }

    /// A yes/no check encoded as `measured ∈ {0, 1}` against `>= 1`.
    pub fn flag(name: impl Into<String>, citation: impl Into<String>, ok: bool) -> Self {
        Record::at_least(name, citation, if ok { 1.0 } else { 0.0 }, 1.0)
    }

    pub fn from_bound(prefix: &str, citation: impl Into<String>, b: &EvidenceBound) -> Self {
        Record::new(
            format!("{prefix}{}", b.name),
            citation,
            b.value,
            Comparison::from_symbol(b.comparison()),
            b.threshold,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report<C: Serialize> {
    pub schema: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub config: C,
    pub records: Vec<Record>,
    pub certificates: Vec<HomotopyCertificate>,
    pub deduction: Vec<String>,
    pub notes: Vec<String>,
    pub overall_pass: bool,
}

impl<C: Serialize> Report<C> {
    pub fn new(config: C) -> Self {
        Report {
            schema: SCHEMA_VERSION,
            tool: TOOL_NAME,
            version: env!("CARGO_PKG_VERSION"),
            config,
            records: Vec::new(),
            certificates: Vec::new(),
            deduction: Vec::new(),
            notes: Vec::new(),
            overall_pass: false,
        }
    }

    pub fn push(&mut self, record: Record) {
        self.records.push(record);
        self.refresh();
    }

    pub fn extend(&mut self, records: impl IntoIterator<Item = Record>) {
        self.records.extend(records);
        self.refresh();
    }

    /// Folds another report's records, certificates and text into this one.
    pub fn absorb<D: Serialize>(&mut self, other: Report<D>) {
        self.records.extend(other.records);
        self.certificates.extend(other.certificates);
        self.deduction.extend(other.deduction);
        self.notes.extend(other.notes);
        self.refresh();
    }

    fn refresh(&mut self) {
        self.overall_pass = !self.records.is_empty() && self.records.iter().all(|r| r.pass);
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn record(&self, name: &str) -> Option<&Record> {
        self.records.iter().find(|r| r.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    /// One row per record, then a final `overall` row.
    pub fn to_csv_summary(&self) -> String {
        let mut out = String::from("name,measured,comparison,threshold,pass\n");
        for r in &self.records {
            out.push_str(&format!(
                "{},{:e},{},{:e},{}\n",
                r.name,
                r.measured,
                r.comparison.symbol(),
                r.threshold,
                r.pass
            ));
        }
        out.push_str(&format!("overall,,,,{}\n", self.overall_pass));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overall_requires_every_record() {
        let mut r = Report::new(());
        assert!(!r.overall_pass);
        r.push(Record::at_most("a", "x", 1e-14, 1e-13));
        assert!(r.overall_pass);
        r.push(Record::above("b", "y", 0.0, 0.0));
        assert!(!r.overall_pass);
        assert_eq!(r.failures().count(), 1);
    }

    #[test]
    fn nan_fails() {
        assert!(!Record::at_most("n", "", f64::NAN, 1.0).pass);
        assert!(!Record::at_least("n", "", f64::NAN, 1.0).pass);
    }

    #[test]
    fn json_layout() {
        let mut r = Report::new(serde_json::json!({"lat": 3}));
        r.push(Record::flag("ok", "c", true));
        r.push(Record::at_most("inf", "c", f64::INFINITY, 1.0));
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["tool"], "expspec");
        assert_eq!(v["config"]["lat"], 3);
        assert_eq!(v["records"][0]["comparison"], ">=");
        assert!(v["records"][1]["measured"].is_null());
        assert_eq!(v["overall_pass"], false);
    }

    #[test]
    fn csv_summary_rows() {
        let mut r = Report::new(());
        r.push(Record::at_most("a", "x", 0.5, 1.0));
        let csv = r.to_csv_summary();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[1], "a,5e-1,<=,1e0,true");
        assert_eq!(lines[2], "overall,,,,true");
    }

    #[test]
    fn evidence_bound_round_trip() {
        let b = EvidenceBound::above("gap", 0.9, 0.1);
        let r = Record::from_bound("ab.", "c", &b);
        assert_eq!(r.name, "ab.gap");
        assert_eq!(r.comparison, Comparison::Above);
        assert!(r.pass);
    }
}
