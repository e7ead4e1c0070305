//! Serializable check results shared by the module-level verifications.

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Number of failing instances kept verbatim in a report.
pub const MAX_EXAMPLES: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub params: Value,
    pub checked: usize,
    pub failures: usize,
    pub examples: Vec<String>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckReport {
    pub fn new(check: &str, params: Value) -> Self {
        CheckReport {
            check: check.to_string(),
            params,
            checked: 0,
            failures: 0,
            examples: Vec::new(),
            pass: true,
            note: None,
        }
    }

    pub fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            self.pass = false;
            if self.examples.len() < MAX_EXAMPLES {
                self.examples.push(describe());
            }
        }
    }

    /// Folds per-item outcomes, e.g. from a parallel map, in input order.
    pub fn absorb(&mut self, outcomes: impl IntoIterator<Item = (usize, Vec<String>)>) {
        for (checked, fails) in outcomes {
            self.checked += checked;
            self.failures += fails.len();
            if !fails.is_empty() {
                self.pass = false;
            }
            for f in fails {
                if self.examples.len() < MAX_EXAMPLES {
                    self.examples.push(f);
                }
            }
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}
