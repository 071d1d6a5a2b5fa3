//! Uniform pass/fail/diagnostic records shared by every verification suite.

use serde::Serialize;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    /// Informational finding; never affects exit codes.
    Diag,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Diag => "DIAG",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, status: Status, detail: impl Into<String>) -> Self {
        Check { name: name.into(), status, detail: detail.into() }
    }

    pub fn pass(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Self::new(name, Status::Pass, detail)
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Self::new(name, Status::Fail, detail)
    }

    pub fn diag(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Self::new(name, Status::Diag, detail)
    }

    pub fn from_bool(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Self::new(name, if ok { Status::Pass } else { Status::Fail }, detail)
    }

    pub fn is_fail(&self) -> bool {
        self.status == Status::Fail
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report { suite: suite.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    /// Appends `other`'s checks with names prefixed by `prefix/`.
    pub fn extend_prefixed(&mut self, prefix: &str, other: Report) {
        self.checks.extend(other.checks.into_iter().map(|mut c| {
            c.name = format!("{prefix}/{}", c.name);
            c
        }));
    }

    /// True when no check failed (diagnostics are ignored).
    pub fn ok(&self) -> bool {
        !self.checks.iter().any(Check::is_fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.is_fail())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("== {} ==\n", self.suite);
        for c in &self.checks {
            s.push_str(&format!("[{}] {}", c.status, c.name));
            if !c.detail.is_empty() {
                s.push_str(": ");
                s.push_str(&c.detail);
            }
            s.push('\n');
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diag_does_not_fail() {
        let mut r = Report::new("t");
        r.push(Check::pass("a", ""));
        r.push(Check::diag("b", "note"));
        assert!(r.ok());
        r.push(Check::fail("c", "x"));
        assert!(!r.ok());
        assert!(r.to_json().contains("\"DIAG\""));
        assert!(r.to_text().contains("[FAIL] c: x"));
    }
}
