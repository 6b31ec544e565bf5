//! Structured verification reports.
//!
//! Every check lists the instances that failed together with both evaluated
//! sides, so a failing run can be reproduced by hand.

use serde::Serialize;

use crate::ring::RingValue;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Basis indices (or element indices) of the failing instance.
    pub indices: Vec<usize>,
    /// Human-readable names of the same instance.
    pub at: Vec<String>,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
}

impl Witness {
    pub fn new(indices: Vec<usize>, at: Vec<String>, lhs: &[RingValue], rhs: &[RingValue]) -> Self {
        Witness {
            indices,
            at,
            lhs: render(lhs),
            rhs: render(rhs),
        }
    }
}

pub(crate) fn render(v: &[RingValue]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    /// Number of identity instances evaluated.
    pub instances: usize,
    pub witnesses: Vec<Witness>,
}

impl Check {
    pub fn from_witnesses(name: impl Into<String>, instances: usize, witnesses: Vec<Witness>) -> Self {
        Check {
            name: name.into(),
            pass: witnesses.is_empty(),
            instances,
            witnesses,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(checks: Vec<Check>) -> Self {
        Report { checks }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failing(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn witness_count(&self) -> usize {
        self.checks.iter().map(|c| c.witnesses.len()).sum()
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }
}
