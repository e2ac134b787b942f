//! The verification report: one record per check, rendered as JSON or as a
//! markdown summary with the existence table.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::constructions::CheckStatus;
use crate::enriques_rules::{Provenance, Table1};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub check_id: String,
    pub module: String,
    pub status: CheckStatus,
    pub provenance: Provenance,
    pub details: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub open: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub tool_version: String,
    pub summary: Summary,
    pub checks: Vec<CheckRecord>,
    #[serde(skip)]
    pub table: Option<Table1>,
}

impl Report {
    /// # Panics
    /// Panics if two records share a check id.
    pub fn new(checks: Vec<CheckRecord>, table: Option<Table1>) -> Report {
        let mut seen = BTreeSet::new();
        for c in &checks {
            assert!(seen.insert(c.check_id.clone()), "duplicate check id {}", c.check_id);
        }
        let count = |s: CheckStatus| checks.iter().filter(|c| c.status == s).count();
        let summary = Summary {
            total: checks.len(),
            pass: count(CheckStatus::Pass),
            fail: count(CheckStatus::Fail),
            open: count(CheckStatus::Open),
        };
        Report { tool_version: env!("CARGO_PKG_VERSION").to_string(), summary, checks, table }
    }

    pub fn has_failures(&self) -> bool {
        self.summary.fail > 0
    }

    pub fn get(&self, id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.check_id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn to_markdown(&self) -> String {
        let mut s = format!("# Verification report (version {})\n\n", self.tool_version);
        s.push_str(&format!(
            "{} checks: {} pass, {} fail, {} open\n\n",
            self.summary.total, self.summary.pass, self.summary.fail, self.summary.open
        ));
        if let Some(t) = &self.table {
            s.push_str("## Existence table\n\n`o`: exists (by construction), `x`: does not exist.\n\n");
            s.push_str(&t.to_markdown());
            s.push('\n');
        }
        s.push_str("## Checks\n\n| check | status | provenance | details |\n|---|---|---|---|\n");
        for c in &self.checks {
            let details = c.details.replace('|', "\\|").replace('\n', " ");
            s.push_str(&format!("| `{}` | {} | {} | {} |\n", c.check_id, c.status, c.provenance, details));
        }
        s
    }
}
