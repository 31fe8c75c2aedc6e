//! Machine-readable run results and the human summary table. The document
//! schema is versioned and fully deterministic: identical configuration and
//! seeds serialize to identical bytes. Wall-clock time appears only in the
//! human table, never in the document.

use serde::{Deserialize, Serialize};

use crate::sim::RoundLedger;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct InstanceDescriptor {
    pub family: String,
    pub n: usize,
    pub m: usize,
    pub diameter: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct AuditSummary {
    /// names of the audits that ran
    pub checks: Vec<String>,
    /// human-readable violation descriptions; empty = pass
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RunResult {
    pub schema_version: u32,
    pub instance: InstanceDescriptor,
    pub algo: String,
    pub epsilon: String,
    pub provider: Option<String>,
    pub output_weight: u64,
    pub output_edges: usize,
    /// exact optimum, when the oracle ran within budget
    pub oracle_opt: Option<u64>,
    /// output_weight / oracle_opt
    pub ratio: Option<f64>,
    pub total_rounds: usize,
    pub tier0_rounds: usize,
    pub total_messages: usize,
    /// total_rounds / ((D+⌈√n⌉)·⌈log2 n⌉²)
    pub normalized_rounds: f64,
    pub ledger: RoundLedger,
    pub audit: AuditSummary,
}

impl RunResult {
    pub fn passed(&self) -> bool {
        self.audit.violations.is_empty()
    }

    /// Stable ordering key for deterministic merges.
    pub fn key(&self) -> (String, u64, String) {
        (self.instance.family.clone(), self.instance.seed, self.algo.clone())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Document {
    pub schema_version: u32,
    pub runs: Vec<RunResult>,
}

impl Document {
    pub fn new(mut runs: Vec<RunResult>) -> Self {
        runs.sort_by_key(|r| r.key());
        Document { schema_version: SCHEMA_VERSION, runs }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = serde_json::to_vec_pretty(self).expect("document serializes");
        out.push(b'\n');
        out
    }
}

pub fn summary_header() -> String {
    format!(
        "{:<24} {:>5} {:>5} {:>4} {:>6} {:<12} {:>8} {:>8} {:>6} {:>9} {:>8}",
        "instance", "n", "m", "D", "seed", "algo", "weight", "opt", "ratio", "rounds", "wall_ms"
    )
}

pub fn summary_row(r: &RunResult, wall_ms: u128) -> String {
    let opt = r.oracle_opt.map_or("-".to_string(), |o| o.to_string());
    let ratio = r.ratio.map_or("-".to_string(), |x| format!("{x:.3}"));
    format!(
        "{:<24} {:>5} {:>5} {:>4} {:>6} {:<12} {:>8} {:>8} {:>6} {:>9} {:>8}",
        r.instance.family,
        r.instance.n,
        r.instance.m,
        r.instance.diameter,
        r.instance.seed,
        r.algo,
        r.output_weight,
        opt,
        ratio,
        r.total_rounds,
        wall_ms
    )
}
