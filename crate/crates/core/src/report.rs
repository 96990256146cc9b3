//! Verification reports shared by every checker and the CLI.
//!
//! A report is a list of entries `{check, params, expected, computed, pass}`.
//! Entries are kept in insertion order while checks run and sorted by
//! `(check, params)` when rendered, so two runs with equal inputs produce
//! identical bytes.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::fmt::Write as _;

/// One verified claim.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    /// Name of the check, e.g. `"dg.associativity"`.
    pub check: String,
    /// Parameters identifying the instance checked.
    pub params: Value,
    /// Expected value.
    pub expected: Value,
    /// Computed value (or a witness on failure).
    pub computed: Value,
    /// Whether `computed` agrees with `expected`.
    pub pass: bool,
}

/// An ordered collection of [`Entry`] values.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Report {
    /// The entries.
    pub entries: Vec<Entry>,
}

impl Report {
    /// Empty report.
    pub fn new() -> Self {
        Self::default()
    }

    /// Record one entry.
    pub fn push(&mut self, check: impl Into<String>, params: Value, expected: Value, computed: Value, pass: bool) {
        self.entries.push(Entry {
            check: check.into(),
            params,
            expected,
            computed,
            pass,
        });
    }

    /// Record an entry that passes iff `expected == computed`.
    pub fn push_eq(&mut self, check: impl Into<String>, params: Value, expected: Value, computed: Value) {
        let pass = expected == computed;
        self.push(check, params, expected, computed, pass);
    }

    /// Append every entry of `other`.
    pub fn extend(&mut self, other: Report) {
        self.entries.extend(other.entries);
    }

    /// True iff every entry passes (vacuously true when empty).
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    /// Failing entries.
    pub fn failures(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| !e.pass)
    }

    /// Number of entries.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// True iff there are no entries.
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries sorted by check name, then by serialized params.
    pub fn sorted(&self) -> Report {
        let mut entries = self.entries.clone();
        entries.sort_by_cached_key(|e| (e.check.clone(), e.params.to_string()));
        Report { entries }
    }

    /// Canonical JSON rendering (sorted, pretty-printed, trailing newline).
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.sorted()).expect("report serializes");
        s.push('\n');
        s
    }

    /// Canonical text rendering: one line per entry.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for e in &self.sorted().entries {
            let _ = writeln!(
                s,
                "{} {} {} expected={} computed={}",
                if e.pass { "PASS" } else { "FAIL" },
                e.check,
                e.params,
                e.expected,
                e.computed
            );
        }
        let fails = self.failures().count();
        let _ = writeln!(s, "{} checks, {} failed", self.len(), fails);
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn sorting_is_stable_and_deterministic() {
        let mut r = Report::new();
        r.push_eq("b", json!({"d": 2}), json!(1), json!(1));
        r.push_eq("a", json!({"d": 3}), json!(1), json!(2));
        r.push_eq("a", json!({"d": 1}), json!(1), json!(1));
        let s = r.sorted();
        assert_eq!(s.entries[0].params, json!({"d": 1}));
        assert_eq!(s.entries[2].check, "b");
        assert!(!r.all_pass());
        assert_eq!(r.to_json(), r.sorted().to_json());
    }
}
