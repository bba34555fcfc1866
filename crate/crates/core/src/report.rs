//! Structured verification outcomes.
//!
//! Every `verify_*` routine returns a [`Report`]: the suite name, its
//! parameters, how many cases ran and the failures with witnesses. The
//! JSON form is deterministic for identical inputs; wall-clock timing is
//! opt-in so byte-identical reruns stay byte-identical.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// One failed check with its witnesses.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Failure {
    pub input: String,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of one verification suite.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Report {
    pub suite: String,
    pub params: BTreeMap<String, String>,
    pub cases: usize,
    pub failures: Vec<Failure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report {
            suite: suite.into(),
            params: BTreeMap::new(),
            cases: 0,
            failures: Vec::new(),
            wall_ms: None,
        }
    }

    pub fn set_param(&mut self, key: impl Into<String>, value: impl ToString) {
        self.params.insert(key.into(), value.to_string());
    }

    /// Records one checked case.
    pub fn record(&mut self, passed: bool, input: impl fmt::Display, lhs: impl fmt::Display, rhs: impl fmt::Display) {
        self.cases += 1;
        if !passed {
            self.failures.push(Failure {
                input: input.to_string(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
    }

    /// Records an equality check.
    pub fn check_eq<T: PartialEq + fmt::Display>(
        &mut self,
        input: impl fmt::Display,
        lhs: &T,
        rhs: &T,
    ) {
        self.record(lhs == rhs, input, lhs, rhs);
    }

    /// Records a plain condition with a textual witness.
    pub fn check(&mut self, passed: bool, input: impl fmt::Display, witness: impl fmt::Display) {
        self.record(passed, input, witness, "expected");
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Merges another suite's counts and failures into this report.
    pub fn absorb(&mut self, other: Report) {
        self.cases += other.cases;
        self.failures.extend(other.failures);
        for (k, v) in other.params {
            self.params.entry(format!("{}: {k}", other.suite)).or_insert(v);
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    /// One-line human summary.
    pub fn summary(&self) -> String {
        format!(
            "{}: {} — {} cases, {} failures",
            self.suite,
            if self.passed() { "PASS" } else { "FAIL" },
            self.cases,
            self.failures.len()
        )
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.summary())?;
        for (k, v) in &self.params {
            writeln!(f, "  {k} = {v}")?;
        }
        for fail in &self.failures {
            writeln!(f, "  FAIL {}\n    lhs: {}\n    rhs: {}", fail.input, fail.lhs, fail.rhs)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_records_and_serialises() {
        let mut r = Report::new("demo");
        r.set_param("k", 2);
        r.check_eq("1 == 1", &1, &1);
        r.check_eq("1 == 2", &1, &2);
        assert_eq!(r.cases, 2);
        assert!(!r.passed());
        let json = r.to_json();
        assert!(json.contains("\"suite\": \"demo\""));
        assert!(!json.contains("wall_ms"));
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }
}
