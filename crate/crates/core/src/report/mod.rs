//! Campaigns of named checks and their JSON reports.

mod campaigns;
mod checks;

use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

pub use campaigns::{Settings, COVERING_CASES};
pub use checks::{run_check, CheckSpec};

pub mod presets {
    pub use super::campaigns::*;
}

use crate::exec::{par_map, Mode};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct Campaign {
    pub name: String,
    pub target: Option<String>,
    pub ring: String,
    pub wmax: usize,
    pub seed: u64,
    pub checks: Vec<CheckSpec>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub target: String,
    pub passed: bool,
    /// concrete counterexamples when `passed` is false
    pub witnesses: Vec<String>,
    pub details: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub timestamp_unix_ms: u128,
    pub check_ms: Vec<u128>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub campaign: Campaign,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
    /// excluded from the determinism contract
    pub timing: Timing,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The report without its timing block.
    pub fn deterministic_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut().expect("object").remove("timing");
        serde_json::to_string_pretty(&v).expect("value serializes")
    }
}

/// Runs every check of the campaign; output order follows the campaign list.
pub fn run(campaign: Campaign, mode: Mode) -> Report {
    let specs: Vec<(usize, CheckSpec)> = campaign.checks.iter().cloned().enumerate().collect();
    let results: Vec<(CheckResult, u128)> = par_map(mode, &specs, |(i, spec)| {
        let t = Instant::now();
        let r = run_check(spec, campaign.seed, *i);
        (r, t.elapsed().as_millis())
    });
    let timestamp = std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map(|d| d.as_millis()).unwrap_or(0);
    let passed = results.iter().all(|(r, _)| r.passed);
    let (checks, check_ms) = results.into_iter().unzip();
    Report { schema: SCHEMA, campaign, passed, checks, timing: Timing { timestamp_unix_ms: timestamp, check_ms } }
}

/// Strips the `timing` block from a serialized report.
pub fn without_timing(json: &str) -> serde_json::Result<String> {
    let mut v: Value = serde_json::from_str(json)?;
    if let Some(o) = v.as_object_mut() {
        o.remove("timing");
    }
    serde_json::to_string_pretty(&v)
}
