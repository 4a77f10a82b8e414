//! Report entries and their deterministic JSON form.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One verified check. Degrees follow the grading that puts `D̃_{n,m}` in degree `m − n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub suite: String,
    pub params: BTreeMap<String, String>,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub derived: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn new(suite: &str, check: String, params: BTreeMap<String, String>) -> Report {
        Report { check, suite: suite.into(), params, status: Status::Pass, witness: None, derived: BTreeMap::new(), timing_ms: None }
    }

    pub fn set(&mut self, key: &str, v: impl Into<Value>) -> &mut Report {
        self.derived.insert(key.into(), v.into());
        self
    }

    /// Records a failing condition; the first witness is kept.
    pub fn require(&mut self, ok: bool, witness: impl FnOnce() -> String) -> &mut Report {
        if !ok && self.status != Status::Fail {
            self.status = Status::Fail;
            self.witness = Some(witness());
        }
        self
    }

    pub fn fail(&mut self, witness: String) -> &mut Report {
        self.require(false, || witness)
    }

    pub fn skip(&mut self, why: &str) -> &mut Report {
        self.status = Status::Skipped;
        self.witness = Some(why.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Sorts by check id and renders the array with sorted keys and a trailing newline.
pub fn render(reports: &mut [Report]) -> String {
    reports.sort_by(|a, b| a.check.cmp(&b.check));
    let mut s = serde_json::to_string_pretty(reports).expect("serializable");
    s.push('\n');
    s
}

/// The human-readable summary: one line per check.
pub fn summary_lines(reports: &[Report]) -> Vec<String> {
    reports
        .iter()
        .map(|r| {
            let tag = match r.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            let extra = r.witness.as_deref().map(|w| format!(" ({w})")).unwrap_or_default();
            format!("{tag} {}{extra}", r.check)
        })
        .collect()
}
