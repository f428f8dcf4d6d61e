//! Machine-readable verification reports.
//!
//! All numbers are decimal strings. Cases are sorted by name and the overall
//! status is the conjunction of the case statuses, so a report depends only
//! on its inputs unless timings are recorded.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::config::Budgets;
use crate::error::Error;

pub const SCHEMA_VERSION: u32 = 1;

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Provenance {
    /// Quoted from the source text.
    Paper,
    /// Immediate from the definitions.
    Trivial,
    /// Computed by an independent method.
    Derived,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub value: String,
    pub provenance: Provenance,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseStatus {
    Pass,
    Fail,
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case {
    pub name: String,
    pub parameters: BTreeMap<String, String>,
    pub expected: Expected,
    pub computed: String,
    pub status: CaseStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<String>,
}

impl Case {
    /// A case that passes iff `computed == expected.value`.
    pub fn compare(
        name: impl Into<String>,
        parameters: &[(&str, String)],
        expected: impl ToString,
        provenance: Provenance,
        computed: impl ToString,
    ) -> Self {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        let status = if expected == computed { CaseStatus::Pass } else { CaseStatus::Fail };
        Case {
            name: name.into(),
            parameters: parameters.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            expected: Expected { value: expected, provenance },
            computed,
            status,
            note: None,
            elapsed_ms: None,
        }
    }

    /// A case whose computation failed: budget errors are
    /// [`CaseStatus::BudgetExceeded`], everything else [`CaseStatus::Fail`].
    pub fn error(
        name: impl Into<String>,
        parameters: &[(&str, String)],
        expected: impl ToString,
        provenance: Provenance,
        err: &Error,
    ) -> Self {
        let status = if err.is_budget() { CaseStatus::BudgetExceeded } else { CaseStatus::Fail };
        let computed = if err.is_budget() { "budget_exceeded" } else { "error" };
        Case { status, ..Self::compare(name, parameters, expected, provenance, computed) }.with_note(err.to_string())
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == CaseStatus::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub campaign: String,
    pub version: String,
    pub budgets: BTreeMap<String, String>,
    pub cases: Vec<Case>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn new(campaign: impl Into<String>, budgets: &Budgets, cases: Vec<Case>) -> Self {
        let mut cases = cases;
        cases.sort_by(|a, b| a.name.cmp(&b.name));
        let passed = cases.iter().all(Case::passed);
        let budgets = BTreeMap::from([
            ("max_enumeration".to_string(), budgets.max_enumeration.to_string()),
            ("max_spairs".to_string(), budgets.max_spairs.to_string()),
            ("max_terms".to_string(), budgets.max_terms.to_string()),
        ]);
        VerificationReport {
            schema: SCHEMA_VERSION,
            campaign: campaign.into(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            budgets,
            cases,
            passed,
        }
    }

    /// Concatenates reports into one campaign; case names are prefixed with
    /// the source campaign.
    pub fn merge(campaign: impl Into<String>, budgets: &Budgets, parts: Vec<VerificationReport>) -> Self {
        let cases = parts
            .into_iter()
            .flat_map(|r| {
                let prefix = r.campaign;
                r.cases.into_iter().map(move |c| Case { name: format!("{prefix}/{}", c.name), ..c })
            })
            .collect();
        Self::new(campaign, budgets, cases)
    }

    pub fn any_budget_exceeded(&self) -> bool {
        self.cases.iter().any(|c| c.status == CaseStatus::BudgetExceeded)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| !c.passed())
    }
}
