//! Structured pass/fail evidence.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::gf2n::FieldElem;

/// Hard checks decide the verdict; informational ones are reported only.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gate {
    Hard,
    Info,
}

impl Gate {
    pub fn as_str(self) -> &'static str {
        match self {
            Gate::Hard => "hard",
            Gate::Info => "info",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub gate: Gate,
    pub pass: bool,
    pub detail: String,
}

/// All checks for one theorem or identity at one parameter point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub theorem: String,
    pub m: u32,
    pub mu: Option<FieldElem>,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(theorem: &str, m: u32, mu: Option<FieldElem>) -> Self {
        VerificationReport {
            theorem: theorem.to_string(),
            m,
            mu,
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, name: &str, gate: Gate, pass: bool, detail: String) {
        self.checks.push(Check {
            name: name.to_string(),
            gate,
            pass,
            detail,
        });
    }

    pub fn hard(&mut self, name: &str, pass: bool, detail: String) {
        self.push(name, Gate::Hard, pass, detail);
    }

    pub fn info(&mut self, name: &str, pass: bool, detail: String) {
        self.push(name, Gate::Info, pass, detail);
    }

    /// True when every hard check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.gate == Gate::Info || c.pass)
    }

    pub fn hard_failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.gate == Gate::Hard && !c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}
