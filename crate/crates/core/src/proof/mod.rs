//! Mechanized checks for the structural facts the avoidance argument uses,
//! the witness-descent step, and end-to-end theorem pipelines.

mod checks;
mod descent;
mod table;
mod theorem;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub use checks::{
    check_alpha_beta_condition, check_exception_pairs_nonconsecutive, check_marker_coverage,
    check_offset_uniqueness, check_successor_property, check_synchronization, consecutive,
};
pub use descent::{
    descend_witness, AlignmentInfo, DescentError, FactorOracle, PrefixOracle, WordOracle,
};
pub use table::{build_distinctness_table, DistinctnessTable, LetterPair, Side, TableViolation};
pub use theorem::{
    verify_theorem, verify_theorem_with, ImagePlan, Premises, SyncPremise, TheoremPlan, Variant,
};

/// Result of one named check, with the evidence it rests on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub details: Value,
}

impl CheckOutcome {
    pub fn new(name: impl Into<String>, passed: bool, details: Value) -> Self {
        let mut details = details;
        if !passed && details.as_object().is_none_or(|o| o.is_empty()) {
            details = serde_json::json!({ "reason": "failed" });
        }
        CheckOutcome {
            name: name.into(),
            passed,
            details,
        }
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub variant: String,
    pub period_bound: usize,
    pub checks: Vec<CheckOutcome>,
    pub overall: bool,
}

impl CheckReport {
    pub fn failed(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Short human-readable summary, one line per check.
    pub fn summary(&self) -> String {
        let mut out = format!(
            "theorem {} (periods up to {}): {}\n",
            self.variant,
            self.period_bound,
            if self.overall { "PASS" } else { "FAIL" }
        );
        for c in &self.checks {
            out.push_str(&format!(
                "  [{}] {}\n",
                if c.passed { "pass" } else { "FAIL" },
                c.name
            ));
            if !c.passed {
                out.push_str(&format!("         {}\n", c.details));
            }
        }
        out
    }
}
