//! Inequality records shared by the verifiers.

use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    Skipped,
    NotApplicable,
}

/// One `lhs >= rhs` comparison.
#[derive(Debug, Clone, Serialize)]
pub struct Record {
    #[serde(rename = "T", skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub diagnostics: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Record>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Record {
    /// Compare `lhs >= rhs` up to `tol * max(1, |lhs|, |rhs|)`.
    pub fn compare(lhs: f64, rhs: f64, tol: f64) -> Self {
        let verdict = if holds(lhs, rhs, tol) { Verdict::Holds } else { Verdict::Fails };
        Record {
            t: None,
            kappa: None,
            label: None,
            lhs,
            rhs,
            slack: lhs - rhs,
            verdict,
            diagnostics: BTreeMap::new(),
            checks: Vec::new(),
            note: None,
        }
    }

    pub fn skipped(note: impl Into<String>) -> Self {
        Record {
            verdict: Verdict::Skipped,
            note: Some(note.into()),
            ..Record::compare(0.0, 0.0, 0.0)
        }
    }

    pub fn labelled(mut self, label: &str) -> Self {
        self.label = Some(label.to_string());
        self
    }

    pub fn at_t(mut self, t: f64) -> Self {
        self.t = Some(t);
        self
    }

    pub fn at_kappa(mut self, kappa: f64) -> Self {
        self.kappa = Some(kappa);
        self
    }

    pub fn diag(mut self, key: &str, value: f64) -> Self {
        self.diagnostics.insert(key.to_string(), value);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    fn any_failure(&self) -> bool {
        self.verdict == Verdict::Fails || self.checks.iter().any(Record::any_failure)
    }
}

pub fn holds(lhs: f64, rhs: f64, tol: f64) -> bool {
    let scale = 1f64.max(lhs.abs()).max(rhs.abs());
    lhs >= rhs - tol * scale
}

#[derive(Debug, Clone, Serialize)]
pub struct InequalityReport {
    pub name: String,
    pub tol: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inclusion_rule: Option<String>,
    pub records: Vec<Record>,
    pub verdict: Verdict,
}

impl InequalityReport {
    pub fn new(name: &str, tol: f64, records: Vec<Record>) -> Self {
        let verdict = if records.iter().any(Record::any_failure) {
            Verdict::Fails
        } else if records.iter().any(|r| r.verdict == Verdict::Holds) {
            Verdict::Holds
        } else if records.iter().any(|r| r.verdict == Verdict::Skipped) {
            Verdict::Skipped
        } else {
            Verdict::NotApplicable
        };
        InequalityReport {
            name: name.to_string(),
            tol,
            inclusion_rule: None,
            records,
            verdict,
        }
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fails
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_is_relative() {
        assert!(holds(1e6, 1e6 + 1e-4, 1e-9));
        assert!(!holds(1e6, 1e6 + 1.0, 1e-9));
        assert!(holds(0.0, 1e-10, 1e-9));
    }

    #[test]
    fn verdict_aggregation() {
        let ok = Record::compare(2.0, 1.0, 1e-9);
        let bad = Record::compare(1.0, 2.0, 1e-9);
        assert_eq!(InequalityReport::new("x", 1e-9, vec![ok.clone()]).verdict, Verdict::Holds);
        assert_eq!(
            InequalityReport::new("x", 1e-9, vec![ok.clone(), bad.clone()]).verdict,
            Verdict::Fails
        );
        let mut nested = ok;
        nested.checks.push(bad);
        assert_eq!(InequalityReport::new("x", 1e-9, vec![nested]).verdict, Verdict::Fails);
        assert_eq!(
            InequalityReport::new("x", 1e-9, vec![Record::skipped("low")]).verdict,
            Verdict::Skipped
        );
    }

    #[test]
    fn json_field_names() {
        let r = Record::compare(3.0, 1.0, 1e-9).at_t(2.0);
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["T"], 2.0);
        assert_eq!(v["verdict"], "holds");
        assert!(v.get("kappa").is_none());
    }
}
