use std::fmt;

use serde_json::{json, Value};

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// A named list of checks; the suite passes when every check does.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct SuiteReport {
    pub label: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn new(label: impl Into<String>) -> SuiteReport {
        SuiteReport {
            label: label.into(),
            checks: Vec::new(),
        }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> bool {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
        passed
    }

    /// Records a computation that may fail; an error is a failed check.
    pub fn check_result<T, E: fmt::Display>(
        &mut self,
        name: impl Into<String>,
        r: Result<T, E>,
        ok: impl FnOnce(&T) -> (bool, String),
    ) -> Option<T> {
        match r {
            Ok(v) => {
                let (passed, detail) = ok(&v);
                self.check(name, passed, detail);
                Some(v)
            }
            Err(e) => {
                self.check(name, false, format!("error: {e}"));
                None
            }
        }
    }

    pub fn absorb(&mut self, other: SuiteReport) {
        let prefix = other.label;
        for c in other.checks {
            self.checks.push(Check {
                name: format!("{prefix}: {}", c.name),
                ..c
            });
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "label": self.label,
            "passed": self.passed(),
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "passed": c.passed,
                "detail": c.detail,
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.checks.len();
        let ok = self.checks.iter().filter(|c| c.passed).count();
        writeln!(f, "{} [{ok}/{n}]", self.label)?;
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "  {mark} {}", c.name)?;
            } else {
                writeln!(f, "  {mark} {}: {}", c.name, c.detail)?;
            }
        }
        Ok(())
    }
}
