//! Pass/fail reports shared by the verifiers.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Counterexample or residue when failing.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, name: impl Into<String>, passed: bool, detail: Option<String>) {
        self.checks.push(Check { name: name.into(), passed, detail });
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.push(name, true, None);
    }

    pub fn fail(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.push(name, false, Some(detail.into()));
    }

    /// Records `passed`, attaching `detail()` only on failure.
    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl FnOnce() -> String) {
        let detail = (!passed).then(detail);
        self.push(name, passed, detail);
    }

    pub fn extend(&mut self, prefix: &str, other: Report) {
        for c in other.checks {
            self.checks.push(Check { name: format!("{prefix}{}", c.name), ..c });
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Same checks ordered by name.
    pub fn sorted(&self) -> Report {
        let mut out = self.clone();
        out.checks.sort_by(|a, b| a.name.cmp(&b.name));
        out
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.title)?;
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            match &c.detail {
                Some(d) => writeln!(f, "  [{mark}] {}: {d}", c.name)?,
                None => writeln!(f, "  [{mark}] {}", c.name)?,
            }
        }
        let ok = self.checks.iter().filter(|c| c.passed).count();
        write!(f, "{ok}/{} PASS", self.checks.len())
    }
}
