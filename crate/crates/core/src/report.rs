//! Verification reports.
//!
//! A failed identity is a report outcome, never an error. Reports are
//! deterministic: witnesses are recorded in the enumeration order of the check.

use std::fmt;

/// One violated instance of an identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Which identity failed, e.g. `"pre2"` or `"filippov"`.
    pub identity: String,
    /// 0-based basis indices of the witness tuple.
    pub witness: Vec<usize>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub check: String,
    pub passed: bool,
    /// Number of instances evaluated.
    pub evaluated: usize,
    pub violations: Vec<Violation>,
    pub children: Vec<Report>,
    /// Free-form lines attached to the report (e.g. "[[r,r,r]] = 0").
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(check: impl Into<String>) -> Self {
        Report {
            check: check.into(),
            passed: true,
            evaluated: 0,
            violations: Vec::new(),
            children: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn violate(&mut self, identity: &str, witness: Vec<usize>, lhs: impl Into<String>, rhs: impl Into<String>) {
        self.passed = false;
        self.violations.push(Violation { identity: identity.to_string(), witness, lhs: lhs.into(), rhs: rhs.into() });
    }

    pub fn fail(&mut self, note: impl Into<String>) {
        self.passed = false;
        self.notes.push(note.into());
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Attaches a sub-report; the parent fails if the child does.
    pub fn push_child(&mut self, child: Report) {
        self.passed &= child.passed;
        self.children.push(child);
    }

    pub fn first_violation(&self) -> Option<&Violation> {
        self.violations.first()
    }

    /// Names of failing direct children.
    pub fn failing_children(&self) -> Vec<&str> {
        self.children.iter().filter(|c| !c.passed).map(|c| c.check.as_str()).collect()
    }

    pub fn child(&self, check: &str) -> Option<&Report> {
        self.children.iter().find(|c| c.check == check)
    }

    fn write_indented(&self, f: &mut fmt::Formatter<'_>, depth: usize) -> fmt::Result {
        let pad = "  ".repeat(depth);
        writeln!(f, "{pad}{}: {}", self.check, if self.passed { "pass" } else { "FAIL" })?;
        for note in &self.notes {
            writeln!(f, "{pad}  {note}")?;
        }
        for v in self.violations.iter().take(10) {
            let tuple: Vec<String> = v.witness.iter().map(|i| (i + 1).to_string()).collect();
            writeln!(f, "{pad}  {} violated at ({}): lhs = {}, rhs = {}", v.identity, tuple.join(","), v.lhs, v.rhs)?;
        }
        if self.violations.len() > 10 {
            writeln!(f, "{pad}  ... {} more", self.violations.len() - 10)?;
        }
        for child in &self.children {
            child.write_indented(f, depth + 1)?;
        }
        Ok(())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_indented(f, 0)
    }
}
