use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::lattice::Elem;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: String,
    pub witness: Vec<Elem>,
}

/// Outcome of a validator: `ok` iff there are no violations. Each axiom is
/// listed once, with the first witness found in scan order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub ok: bool,
    pub violations: Vec<Violation>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub flags: BTreeMap<String, bool>,
}

impl Default for Report {
    fn default() -> Self {
        Self::new()
    }
}

impl Report {
    pub fn new() -> Self {
        Report { ok: true, violations: Vec::new(), flags: BTreeMap::new() }
    }

    /// Records a violation unless `axiom` already has one.
    pub fn fail(&mut self, axiom: &str, witness: Vec<Elem>) {
        self.ok = false;
        if !self.has(axiom) {
            self.violations.push(Violation { axiom: axiom.to_string(), witness });
        }
    }

    /// Convenience for scans: records the failure when `holds` is false.
    pub fn require(&mut self, holds: bool, axiom: &str, witness: impl FnOnce() -> Vec<Elem>) {
        if !holds {
            self.fail(axiom, witness());
        }
    }

    pub fn has(&self, axiom: &str) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    pub fn witness(&self, axiom: &str) -> Option<&[Elem]> {
        self.violations.iter().find(|v| v.axiom == axiom).map(|v| v.witness.as_slice())
    }

    pub fn set_flag(&mut self, name: &str, value: bool) {
        self.flags.insert(name.to_string(), value);
    }

    pub fn flag(&self, name: &str) -> Option<bool> {
        self.flags.get(name).copied()
    }

    pub fn axioms(&self) -> Vec<&str> {
        self.violations.iter().map(|v| v.axiom.as_str()).collect()
    }

    pub fn merge(&mut self, other: Report) {
        for v in other.violations {
            self.fail(&v.axiom, v.witness);
        }
        self.flags.extend(other.flags);
    }
}
