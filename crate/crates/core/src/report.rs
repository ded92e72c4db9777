//! Sweep reports shared by the library checks and the CLI.

use serde::Serialize;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub case: String,
    pub expected: String,
    pub got: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub check: String,
    pub n: usize,
    pub total: u64,
    pub passed: u64,
    pub counterexamples: Vec<Counterexample>,
}

impl VerifyReport {
    pub fn new(check: &str, n: usize) -> Self {
        VerifyReport {
            schema: SCHEMA,
            check: check.to_string(),
            n,
            total: 0,
            passed: 0,
            counterexamples: Vec::new(),
        }
    }

    pub fn record(&mut self, outcome: Option<Counterexample>) {
        self.total += 1;
        match outcome {
            None => self.passed += 1,
            Some(c) => self.counterexamples.push(c),
        }
    }

    pub fn ok(&self) -> bool {
        self.counterexamples.is_empty() && self.passed == self.total
    }

    /// `"24/24 pass"`, or `"23/24 pass, 1 counterexample"`.
    pub fn summary(&self) -> String {
        let mut s = format!("{}/{} pass", self.passed, self.total);
        if !self.counterexamples.is_empty() {
            let k = self.counterexamples.len();
            s.push_str(&format!(
                ", {k} counterexample{}",
                if k == 1 { "" } else { "s" }
            ));
        }
        s
    }
}
