//! Suite reports and replayable counterexamples.

use std::collections::BTreeMap;

use semiwork_core::{CayleyTable, Identity, Witness};
use serde::{Deserialize, Serialize};

use crate::input::parse_one;
use crate::json::TableDoc;
use crate::WorkbenchError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One variable's value in a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Binding {
    pub var: String,
    pub element: usize,
    pub label: String,
}

/// A semigroup with an assignment under which `identity` fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub semigroup: TableDoc,
    pub identity: String,
    pub assignment: Vec<Binding>,
    pub lhs: usize,
    pub rhs: usize,
}

impl Counterexample {
    pub fn new(name: &str, s: &CayleyTable, w: &Witness) -> Self {
        Counterexample {
            semigroup: TableDoc::from_table(name, s),
            identity: w.identity.to_string(),
            assignment: w
                .assignment
                .iter()
                .map(|(v, e)| Binding {
                    var: v.to_string(),
                    element: *e,
                    label: s.label(*e).to_string(),
                })
                .collect(),
            lhs: w.lhs_value,
            rhs: w.rhs_value,
        }
    }

    /// Reloads the semigroup and re-evaluates both sides under the stored
    /// assignment. Returns the recomputed `(lhs, rhs)` values.
    pub fn replay(&self) -> Result<(usize, usize), WorkbenchError> {
        let s = self.semigroup.to_table()?;
        let id: Identity = parse_one(&self.identity)?;
        let asg = self
            .assignment
            .iter()
            .map(|b| (semiwork_core::Var::new(b.var.clone()), b.element))
            .collect();
        let rhs = id.rhs_term().ok_or_else(|| {
            WorkbenchError::Usage(String::from("zero-form identities are stored expanded"))
        })?;
        let l = id
            .lhs
            .evaluate(&s, &asg)
            .map_err(|e| WorkbenchError::Usage(e.to_string()))?;
        let r = rhs
            .evaluate(&s, &asg)
            .map_err(|e| WorkbenchError::Usage(e.to_string()))?;
        Ok((l, r))
    }

    /// The replay reproduces the recorded values and they differ.
    pub fn reproduces(&self) -> bool {
        self.replay()
            .is_ok_and(|(l, r)| l == self.lhs && r == self.rhs && l != r)
    }

    pub fn describe(&self) -> String {
        let values: Vec<String> = self
            .assignment
            .iter()
            .map(|b| format!("{}={}", b.var, b.label))
            .collect();
        let label = |e: usize| {
            self.semigroup
                .labels
                .get(e)
                .cloned()
                .unwrap_or_else(|| format!("e{e}"))
        };
        format!(
            "{} fails in {} at {} ({} vs {})",
            self.identity,
            if self.semigroup.name.is_empty() {
                "semigroup"
            } else {
                &self.semigroup.name
            },
            values.join(", "),
            label(self.lhs),
            label(self.rhs)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub claim: String,
    /// The mathematical statement the check belongs to.
    pub location: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    /// Evidence for a failure that the check expects.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Counterexample>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(claim: impl Into<String>, location: &str, ok: bool) -> Self {
        Check {
            claim: claim.into(),
            location: location.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            counterexample: None,
            witness: None,
            detail: None,
        }
    }

    pub fn with_counterexample(mut self, c: Option<Counterexample>) -> Self {
        self.counterexample = c;
        self
    }

    pub fn with_witness(mut self, w: Option<Counterexample>) -> Self {
        self.witness = w;
        self
    }

    pub fn with_detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub passed: bool,
    pub wall_ms: u128,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub notes: BTreeMap<String, String>,
}

impl SuiteReport {
    pub fn new(suite: &str, checks: Vec<Check>, wall_ms: u128) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            passed: checks.iter().all(Check::passed),
            checks,
            wall_ms,
            notes: BTreeMap::new(),
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let passed = self.checks.iter().filter(|c| c.passed()).count();
        out.push_str(&format!(
            "suite {}: {} ({}/{} checks, {} ms)\n",
            self.suite,
            if self.passed { "PASS" } else { "FAIL" },
            passed,
            self.checks.len(),
            self.wall_ms
        ));
        for (k, v) in &self.notes {
            out.push_str(&format!("  note {k}: {v}\n"));
        }
        for c in &self.checks {
            let mark = if c.passed() { "ok  " } else { "FAIL" };
            out.push_str(&format!("  {mark} {}\n", c.claim));
            if let Some(d) = &c.detail {
                out.push_str(&format!("         {d}\n"));
            }
            if let Some(ce) = &c.counterexample {
                out.push_str(&format!("         counterexample: {}\n", ce.describe()));
            }
            if let Some(w) = &c.witness {
                out.push_str(&format!("         witness: {}\n", w.describe()));
            }
        }
        out
    }
}
