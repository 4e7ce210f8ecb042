//! Windows and check reports.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::key::BasisKey;
use super::lincomb::{FormalVector, Tensor, TupleDisplay};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Index box `[-n, n]` with an interior margin. When `margin` is `None` each
/// check derives it from the law (products composed × largest index shift).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub n: i64,
    pub margin: Option<i64>,
}

impl Window {
    pub fn new(n: i64) -> Self {
        Window { n, margin: None }
    }

    pub fn with_margin(n: i64, margin: i64) -> Self {
        Window { n, margin: Some(margin) }
    }

    /// Caps `n` at `cap`, keeping an explicit margin.
    pub fn capped(&self, cap: i64) -> Self {
        Window { n: self.n.min(cap), margin: self.margin }
    }

    /// Interior radius for a law whose natural margin is `auto_margin`.
    pub fn interior(&self, law: &str, auto_margin: i64) -> Result<i64> {
        let m = self.margin.unwrap_or(auto_margin);
        let r = self.n - m;
        if r < 1 || self.n < 1 {
            return Err(Error::InsufficientWindow { law: law.to_string(), n: self.n, margin: m });
        }
        Ok(r)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Residual {
    Scalar(Scalar),
    Vector(FormalVector),
    Tensor(Tensor),
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Residual::Scalar(s) => write!(f, "{s}"),
            Residual::Vector(v) => write!(f, "{v}"),
            Residual::Tensor(t) => {
                let parts: Vec<String> =
                    t.iter().map(|(ks, c)| format!("({c}){}", TupleDisplay(ks))).collect();
                if parts.is_empty() {
                    f.write_str("0")
                } else {
                    f.write_str(&parts.join(" + "))
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub label: String,
    pub keys: Vec<BasisKey>,
    pub residual: Residual,
}

impl Violation {
    pub fn new(label: &str, keys: Vec<BasisKey>, residual: Residual) -> Self {
        Violation { label: label.to_string(), keys, residual }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}: {}", self.label, TupleDisplay(&self.keys), self.residual)
    }
}

/// Stored violations are capped; `violation_count` keeps the full count.
pub const MAX_STORED_VIOLATIONS: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub law: String,
    pub pass: bool,
    pub window: Option<Window>,
    pub checked: u64,
    pub violation_count: u64,
    pub violations: Vec<Violation>,
    pub notes: BTreeMap<String, String>,
}

impl CheckReport {
    pub fn new(law: &str, window: Option<Window>) -> Self {
        CheckReport {
            law: law.to_string(),
            pass: true,
            window,
            checked: 0,
            violation_count: 0,
            violations: Vec::new(),
            notes: BTreeMap::new(),
        }
    }

    pub fn note(&mut self, k: &str, v: impl ToString) {
        self.notes.insert(k.to_string(), v.to_string());
    }

    pub fn record(&mut self, v: Violation) {
        self.violation_count += 1;
        self.violations.push(v);
    }

    pub fn extend(&mut self, vs: impl IntoIterator<Item = Violation>) {
        for v in vs {
            self.record(v);
        }
    }

    /// Adds `count` violations of which only `stored` are kept.
    pub fn record_many(&mut self, count: u64, stored: Vec<Violation>) {
        self.violation_count += count;
        self.violations.extend(stored);
    }

    /// Sorts violations canonically, truncates storage and sets the verdict.
    pub fn finish(mut self) -> Self {
        self.violations.sort_by(|a, b| (&a.label, &a.keys).cmp(&(&b.label, &b.keys)));
        self.violations.truncate(MAX_STORED_VIOLATIONS);
        self.pass = self.violation_count == 0;
        self
    }

    /// Merges another report's counts and violations into this one.
    pub fn absorb(&mut self, other: CheckReport) {
        self.checked += other.checked;
        self.violation_count += other.violation_count;
        self.violations.extend(other.violations);
        for (k, v) in other.notes {
            self.notes.entry(k).or_insert(v);
        }
    }

    pub fn witness(&self) -> Option<&Violation> {
        self.violations.first()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{} {} (checked {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.law,
            self.checked
        );
        if let Some(w) = self.window {
            s.push_str(&format!(", N={}", w.n));
        }
        s.push(')');
        for (k, v) in &self.notes {
            s.push_str(&format!(" {k}={v}"));
        }
        if let Some(v) = self.witness() {
            s.push_str(&format!(
                "\n  {} violation(s); first [{}] at {}: {}",
                self.violation_count,
                v.label,
                TupleDisplay(&v.keys),
                v.residual
            ));
        }
        s
    }
}
