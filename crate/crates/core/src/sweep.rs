//! Batch comparison over seeded random scenarios.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::routing::{compare, ComparisonReport};
use crate::scenario::Scenario;

/// One CSV line per scenario.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub scenario: String,
    pub seed: u64,
    pub n1: usize,
    pub n2: usize,
    pub case: String,
    pub inter_links: usize,
    pub requests: usize,
    pub tqr_rounds: usize,
    pub tqr_swaps: usize,
    pub tqr_served: usize,
    pub tqr_failed: usize,
    pub complement_rounds: usize,
    pub complement_measurements: usize,
    pub complement_served: usize,
    pub complement_failed: usize,
    pub rounds_ratio: f64,
}

impl SweepRow {
    pub fn new(scenario: &Scenario, report: &ComparisonReport) -> Self {
        SweepRow {
            scenario: scenario.name.clone().unwrap_or_default(),
            seed: scenario.seed,
            n1: scenario.qlan1,
            n2: scenario.qlan2,
            case: scenario.case.to_string(),
            inter_links: scenario.inter_links.len(),
            requests: report.requests,
            tqr_rounds: report.tqr.rounds,
            tqr_swaps: report.tqr.swap_count,
            tqr_served: report.tqr.served.len(),
            tqr_failed: report.tqr.failed.len(),
            complement_rounds: report.complement.rounds,
            complement_measurements: report.complement.measurement_count,
            complement_served: report.complement.served.len(),
            complement_failed: report.complement.failed.len(),
            rounds_ratio: report.rounds_ratio,
        }
    }
}

pub fn compare_scenario(scenario: &Scenario) -> Result<ComparisonReport> {
    scenario.validate()?;
    compare(
        &scenario.physical_topology()?,
        &scenario.inter_qlan_graph()?,
        &scenario.request_set()?,
        &scenario.complement_options()?,
    )
}

/// Compares `count` random `n1 + n2` scenarios with seeds `seed, seed + 1, ...`.
/// Runs in parallel; output order follows the seeds.
pub fn sweep(n1: usize, n2: usize, count: usize, seed: u64) -> Result<Vec<(Scenario, ComparisonReport)>> {
    (0..count as u64)
        .into_par_iter()
        .map(|k| {
            let scenario = Scenario::random(n1, n2, n1 * n2, seed.wrapping_add(k));
            let report = compare_scenario(&scenario)?;
            Ok((scenario, report))
        })
        .collect()
}

pub fn rows_to_csv(rows: &[SweepRow]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer
            .serialize(row)
            .map_err(|e| crate::error::Error::Internal(format!("csv: {e}")))?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| crate::error::Error::Internal(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
