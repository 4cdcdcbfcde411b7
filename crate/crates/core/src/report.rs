//! Structured comparison records between a published claim and a computed value.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Note,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Note => "NOTE",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub claim_id: String,
    /// Location of the claim, e.g. "section 3, table".
    pub anchor: String,
    pub paper_value: String,
    pub computed_value: String,
    pub status: Status,
    /// FAIL against a claim that is known to be misprinted.
    pub errata: bool,
    pub witnesses: Vec<Value>,
}

impl Report {
    pub fn new(claim_id: impl Into<String>, anchor: impl Into<String>) -> Self {
        Report {
            claim_id: claim_id.into(),
            anchor: anchor.into(),
            paper_value: String::new(),
            computed_value: String::new(),
            status: Status::Note,
            errata: false,
            witnesses: Vec::new(),
        }
    }

    pub fn paper(mut self, v: impl Into<String>) -> Self {
        self.paper_value = v.into();
        self
    }

    pub fn computed(mut self, v: impl Into<String>) -> Self {
        self.computed_value = v.into();
        self
    }

    pub fn witness(mut self, w: impl Serialize) -> Self {
        self.witnesses.push(serde_json::to_value(w).expect("witness serializes"));
        self
    }

    pub fn witnesses<I: IntoIterator<Item = Value>>(mut self, ws: I) -> Self {
        self.witnesses.extend(ws);
        self
    }

    pub fn note(mut self) -> Self {
        self.status = Status::Note;
        self
    }

    /// PASS when `ok`, otherwise FAIL. A FAIL without a witness gets the
    /// computed value attached so it always carries a counterexample.
    pub fn check(mut self, ok: bool) -> Self {
        self.status = if ok { Status::Pass } else { Status::Fail };
        if !ok && self.witnesses.is_empty() {
            self.witnesses.push(Value::String(self.computed_value.clone()));
        }
        self
    }

    /// Like [`Report::check`], marking a FAIL as a known misprint.
    pub fn check_errata(self, ok: bool) -> Self {
        let mut r = self.check(ok);
        r.errata = r.status == Status::Fail;
        r
    }

    pub fn is_unexpected_failure(&self) -> bool {
        self.status == Status::Fail && !self.errata
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.errata { " (errata)" } else { "" };
        write!(f, "[{}{}] {} ({})", self.status, tag, self.claim_id, self.anchor)?;
        if !self.paper_value.is_empty() {
            write!(f, "\n    printed:  {}", self.paper_value)?;
        }
        if !self.computed_value.is_empty() {
            write!(f, "\n    computed: {}", self.computed_value)?;
        }
        for w in &self.witnesses {
            write!(f, "\n    witness:  {w}")?;
        }
        Ok(())
    }
}

/// Process exit code for a finished report list: 0 when clean, 2 when any
/// FAIL remains (errata FAILs are forgiven under `allow_errata`).
pub fn exit_code(reports: &[Report], allow_errata: bool) -> i32 {
    let bad = reports.iter().any(|r| r.status == Status::Fail && (r.is_unexpected_failure() || !allow_errata));
    if bad {
        2
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failing_report_always_has_witness() {
        let r = Report::new("x", "s1").paper("1").computed("2").check(false);
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.witnesses.len(), 1);
        assert!(r.is_unexpected_failure());
    }

    #[test]
    fn exit_codes() {
        let pass = Report::new("a", "s").check(true);
        let errata = Report::new("b", "s").check_errata(false);
        let fail = Report::new("c", "s").check(false);
        assert_eq!(exit_code(std::slice::from_ref(&pass), false), 0);
        assert_eq!(exit_code(&[pass.clone(), errata.clone()], false), 2);
        assert_eq!(exit_code(&[pass.clone(), errata.clone()], true), 0);
        assert_eq!(exit_code(&[pass, errata, fail], true), 2);
        assert!(!Report::new("d", "s").check_errata(true).errata);
    }

    #[test]
    fn json_schema() {
        let r = Report::new("s3-table-n2", "section 3 table").paper("p").computed("c").witness(vec![1, 2]).check(true);
        let v = serde_json::to_value(&r).unwrap();
        for key in ["claim_id", "paper_value", "computed_value", "status", "witnesses", "errata", "anchor"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["status"], "PASS");
    }
}
