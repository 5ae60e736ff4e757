//! Tallies of axiom checks over exhaustive tuple scans.
//!
//! Every identity is checked only where both sides are defined. Such tuples
//! count as *substantive*; the rest are *vacuous*. Failures keep the first few
//! witnesses in scan order, so merging partitions in order reproduces the
//! sequential report exactly.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

/// Witnesses retained per axiom; the violation count is always exact.
pub const WITNESS_CAP: usize = 16;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AxiomTally {
    pub substantive: u64,
    pub vacuous: u64,
    pub violations: u64,
    pub witnesses: Vec<Violation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Labels of the scanned tuple.
    pub tuple: Vec<String>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    axioms: BTreeMap<String, AxiomTally>,
}

impl AxiomReport {
    pub fn new() -> Self {
        Self::default()
    }

    fn tally(&mut self, axiom: &str) -> &mut AxiomTally {
        if !self.axioms.contains_key(axiom) {
            self.axioms.insert(axiom.to_string(), AxiomTally::default());
        }
        self.axioms.get_mut(axiom).unwrap()
    }

    /// Registers an axiom so it shows up even if nothing was scanned.
    pub fn declare(&mut self, axiom: &str) {
        self.tally(axiom);
    }

    pub fn pass(&mut self, axiom: &str) {
        self.tally(axiom).substantive += 1;
    }

    pub fn vacuous(&mut self, axiom: &str) {
        self.tally(axiom).vacuous += 1;
    }

    pub fn fail(&mut self, axiom: &str, tuple: Vec<String>, detail: impl Into<String>) {
        let t = self.tally(axiom);
        t.substantive += 1;
        t.violations += 1;
        if t.witnesses.len() < WITNESS_CAP {
            t.witnesses.push(Violation { tuple, detail: detail.into() });
        }
    }

    /// Records a plain predicate.
    pub fn check(&mut self, axiom: &str, ok: bool, tuple: impl FnOnce() -> Vec<String>, detail: impl FnOnce() -> String) {
        if ok {
            self.pass(axiom);
        } else {
            self.fail(axiom, tuple(), detail());
        }
    }

    /// Records an identity `lhs = rhs`, vacuous unless both sides are defined.
    pub fn identity<T: PartialEq + fmt::Debug>(
        &mut self,
        axiom: &str,
        lhs: Option<T>,
        rhs: Option<T>,
        tuple: impl FnOnce() -> Vec<String>,
    ) {
        match (lhs, rhs) {
            (Some(l), Some(r)) if l == r => self.pass(axiom),
            (Some(l), Some(r)) => self.fail(axiom, tuple(), format!("lhs {l:?} != rhs {r:?}")),
            _ => self.vacuous(axiom),
        }
    }

    /// Appends another report; call in scan order for deterministic output.
    pub fn merge(&mut self, other: AxiomReport) {
        for (name, t) in other.axioms {
            let mine = self.tally(&name);
            mine.substantive += t.substantive;
            mine.vacuous += t.vacuous;
            mine.violations += t.violations;
            for w in t.witnesses {
                if mine.witnesses.len() < WITNESS_CAP {
                    mine.witnesses.push(w);
                }
            }
        }
    }

    /// Adds every axiom of `other` under `prefix`.
    pub fn merge_prefixed(&mut self, prefix: &str, other: AxiomReport) {
        let renamed = other
            .axioms
            .into_iter()
            .map(|(k, v)| (format!("{prefix}{k}"), v))
            .collect();
        self.merge(AxiomReport { axioms: renamed });
    }

    pub fn is_valid(&self) -> bool {
        self.axioms.values().all(|t| t.violations == 0)
    }

    pub fn violation_count(&self) -> u64 {
        self.axioms.values().map(|t| t.violations).sum()
    }

    pub fn get(&self, axiom: &str) -> Option<&AxiomTally> {
        self.axioms.get(axiom)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &AxiomTally)> {
        self.axioms.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Axioms with at least one violation.
    pub fn failing(&self) -> impl Iterator<Item = (&str, &AxiomTally)> {
        self.iter().filter(|(_, t)| t.violations > 0)
    }

    /// Sum of substantive checks over axioms whose name starts with `prefix`.
    pub fn substantive_with_prefix(&self, prefix: &str) -> u64 {
        self.iter()
            .filter(|(k, _)| k.starts_with(prefix))
            .map(|(_, t)| t.substantive)
            .sum()
    }

    /// One line naming the first failing axiom and its first witness.
    pub fn summary(&self) -> String {
        match self.failing().next() {
            None => "all axioms hold".to_string(),
            Some((name, t)) => {
                let w = t
                    .witnesses
                    .first()
                    .map(|w| format!(" at ({}): {}", w.tuple.join(", "), w.detail))
                    .unwrap_or_default();
                format!("{} violation(s); first in {name}{w}", self.violation_count())
            }
        }
    }
}
