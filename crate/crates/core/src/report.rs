//! Check reports and checker configuration.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// Passed on every sampled instance; the property quantifies over more
    /// instances than were checked.
    SampledPass,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub id: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub entries: Vec<Entry>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report {
            suite: suite.into(),
            notes: Vec::new(),
            entries: Vec::new(),
        }
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn push(&mut self, entry: Entry) {
        self.entries.push(entry);
    }

    pub fn pass(&mut self, id: impl Into<String>, detail: impl Into<String>) {
        self.push(Entry {
            id: id.into(),
            status: Status::Pass,
            counterexample: None,
            detail: detail.into(),
        });
    }

    pub fn sampled_pass(&mut self, id: impl Into<String>, detail: impl Into<String>) {
        self.push(Entry {
            id: id.into(),
            status: Status::SampledPass,
            counterexample: None,
            detail: detail.into(),
        });
    }

    pub fn fail(
        &mut self,
        id: impl Into<String>,
        detail: impl Into<String>,
        counterexample: Value,
    ) {
        self.push(Entry {
            id: id.into(),
            status: Status::Fail,
            counterexample: Some(counterexample),
            detail: detail.into(),
        });
    }

    /// Records `outcome` as a pass (exhaustive or sampled) or a failure.
    pub fn record(
        &mut self,
        id: impl Into<String>,
        sampled: bool,
        detail: impl Into<String>,
        outcome: Result<(), Value>,
    ) {
        match outcome {
            Ok(()) if sampled => self.sampled_pass(id, detail),
            Ok(()) => self.pass(id, detail),
            Err(cex) => self.fail(id, detail, cex),
        }
    }

    /// Appends the entries of `other`, prefixing their ids with its suite.
    pub fn absorb(&mut self, other: Report) {
        for n in other.notes {
            self.notes.push(format!("{}: {n}", other.suite));
        }
        for mut e in other.entries {
            e.id = format!("{}/{}", other.suite, e.id);
            self.entries.push(e);
        }
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| e.status == Status::Fail)
    }

    pub fn entry(&self, id: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.id == id)
    }

    /// 0 when nothing failed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CheckError {
    #[error("ground set has {size} elements; exhaustive checks are limited to {max}")]
    GroundTooLarge { size: usize, max: usize },
    #[error("no index with family member ({pos}, {neg}) exists to serve as {role}")]
    MissingIndex {
        role: String,
        pos: String,
        neg: String,
    },
}

/// Knobs shared by the axiom checkers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckConfig {
    /// Largest ground set on which exhaustive sweeps are attempted.
    pub max_ground: usize,
    pub seed: u64,
    /// Number of random instances for sampled properties.
    pub samples: usize,
    /// Precision `p` (tolerance `2^-p`) for checks on modulated reals.
    pub precision: u32,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            max_ground: 4,
            seed: 0,
            samples: 200,
            precision: 16,
        }
    }
}
