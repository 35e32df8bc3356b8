//! Report envelope shared by every command.

use serde::Serialize;
use serde_json::Value;

use crate::rank1::SearchBounds;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Provenance {
    /// exact arithmetic, no search involved
    Exact,
    /// exhaustive search inside the recorded bounds
    WithinBounds { bounds: SearchBounds },
    /// matching closed-form lower and upper bounds
    ClosedForm,
    /// rests on a supplied citation
    Assumed { citation: String },
    /// at least one result disagrees with the stated value
    Deviation,
}

/// Deterministic output of one command; no timings, so reruns with the same
/// inputs and seed are byte-identical.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub provenance: Provenance,
    pub outputs: Value,
    pub tool_version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl RunReport {
    pub fn new(command: &str, inputs: Value, provenance: Provenance, outputs: Value) -> Self {
        RunReport {
            command: command.into(),
            inputs,
            provenance,
            outputs,
            tool_version: TOOL_VERSION,
            seed: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
