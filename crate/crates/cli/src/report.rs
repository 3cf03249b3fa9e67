use std::fmt::Write;

use serde::Serialize;
use tambara_core::{CheckOutcome, Status};

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<CheckOutcome>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report { suite: suite.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, c: CheckOutcome) {
        self.checks.push(c);
    }

    /// 0 when everything passes; a failure outranks a resource limit.
    pub fn exit_code(&self) -> i32 {
        if self.checks.iter().any(|c| c.status == Status::Fail) {
            1
        } else if self.checks.iter().any(|c| c.status == Status::ResourceLimit) {
            3
        } else {
            0
        }
    }

    /// Zeroes timings, the only field that varies between identical runs.
    pub fn without_timings(mut self) -> Self {
        for c in &mut self.checks {
            c.millis = 0;
        }
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("suite {}\n", self.suite);
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::ResourceLimit => "LIMIT",
            };
            let _ = write!(s, "[{status}] {}", c.name);
            if let Some(n) = c.count {
                let _ = write!(s, " count={n}");
            }
            let _ = writeln!(s, " ({} ms)", c.millis);
            if let Some(d) = &c.detail {
                let _ = writeln!(s, "    {d}");
            }
            if let Some(w) = &c.witness {
                let _ = writeln!(s, "    witness: {w}");
            }
        }
        s
    }
}

pub fn outcome(name: impl Into<String>, status: Status, millis: u64) -> CheckOutcome {
    CheckOutcome { name: name.into(), status, witness: None, count: None, millis, detail: None }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let mut r = Report::new("t");
        assert_eq!(r.exit_code(), 0);
        r.push(outcome("a", Status::ResourceLimit, 0));
        assert_eq!(r.exit_code(), 3);
        r.push(outcome("b", Status::Fail, 0));
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn json_schema() {
        let mut r = Report::new("t");
        let mut c = outcome("a", Status::Pass, 3);
        c.count = Some(64);
        r.push(c);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["suite"], "t");
        assert_eq!(v["checks"][0]["status"], "pass");
        assert_eq!(v["checks"][0]["count"], 64);
        assert!(v["checks"][0].get("witness").is_none());
    }
}
