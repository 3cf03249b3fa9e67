use std::fmt;

use serde::Serialize;

/// Maximum number of violations stored verbatim; the rest are only counted.
const MAX_RECORDED: usize = 64;

/// One violated equation together with the data that violates it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: String,
    pub witness: String,
}

/// Outcome of a law checker. Empty iff every checked equation holds.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub violations: Vec<Violation>,
    /// Number of violations found, including those not recorded.
    pub total: usize,
}

impl LawReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn ok(&self) -> bool {
        self.total == 0
    }

    pub fn push(&mut self, law: impl Into<String>, witness: impl Into<String>) {
        self.total += 1;
        if self.violations.len() < MAX_RECORDED {
            self.violations.push(Violation {
                law: law.into(),
                witness: witness.into(),
            });
        }
    }

    /// Appends another report, prefixing its law names with `scope`.
    pub fn absorb(&mut self, scope: &str, other: LawReport) {
        for v in other.violations {
            if self.violations.len() < MAX_RECORDED {
                self.violations.push(Violation {
                    law: format!("{scope}: {}", v.law),
                    witness: v.witness,
                });
            }
        }
        self.total += other.total;
    }

    pub fn first_line(&self) -> String {
        match self.violations.first() {
            Some(v) => format!("{} at {}", v.law, v.witness),
            None => "none".to_string(),
        }
    }

    pub fn has_law(&self, needle: &str) -> bool {
        self.violations.iter().any(|v| v.law.contains(needle))
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return write!(f, "pass");
        }
        writeln!(f, "{} violation(s)", self.total)?;
        for v in &self.violations {
            writeln!(f, "  {}: {}", v.law, v.witness)?;
        }
        Ok(())
    }
}
