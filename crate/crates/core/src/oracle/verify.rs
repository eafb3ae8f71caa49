use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::correction::x_corrections;
use super::state::{prepare_graph_state, project_x, Outcome};
use super::{apply_corrections, fidelity, FIDELITY_TOLERANCE, MAX_QUBITS};
use crate::error::{Error, Result};
use crate::graph::InterQlanGraph;
use crate::lemma::{measure_x, MeasurementRecord};

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    /// Outcome combinations to replay; all `2^m` when `None`.
    pub branches: Option<Vec<Vec<Outcome>>>,
    /// Zero out wall-clock fields so reports compare byte for byte.
    pub normalize_time: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchReport {
    pub outcomes: String,
    pub fidelity: f64,
    pub pass: bool,
    pub wall_time_us: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub qubits: usize,
    pub measurements: usize,
    pub tolerance: f64,
    pub branches: Vec<BranchReport>,
    pub min_fidelity: f64,
    pub max_fidelity: f64,
    pub passed: bool,
}

fn all_branches(m: usize) -> Vec<Vec<Outcome>> {
    (0..1usize << m)
        .map(|bits| {
            (0..m)
                .map(|k| {
                    if bits >> (m - 1 - k) & 1 == 0 {
                        Outcome::Plus
                    } else {
                        Outcome::Minus
                    }
                })
                .collect()
        })
        .collect()
}

fn check_chain(g: &InterQlanGraph, records: &[MeasurementRecord], claimed: &InterQlanGraph) -> Result<()> {
    let mut current = g;
    for (k, r) in records.iter().enumerate() {
        if &r.pre_graph != current {
            return Err(Error::InconsistentRecords(format!(
                "step {k} does not start from the preceding graph"
            )));
        }
        let (post, _) = measure_x(&r.pre_graph, r.measured_vertex, r.special_neighbor)?;
        if post != r.post_graph {
            return Err(Error::InconsistentRecords(format!(
                "step {k} post-graph is not the X-measurement rule applied to its pre-graph"
            )));
        }
        current = &r.post_graph;
    }
    if !current.vertices().eq(claimed.vertices()) {
        return Err(Error::InconsistentRecords(
            "claimed graph has a different vertex set than the measured state".into(),
        ));
    }
    Ok(())
}

/// Prepares `|g⟩`, replays the recorded X-measurements on every requested
/// outcome branch with byproduct corrections, and compares each branch with
/// `|claimed⟩`.
pub fn verify_pipeline(
    g: &InterQlanGraph,
    records: &[MeasurementRecord],
    claimed: &InterQlanGraph,
    options: &VerifyOptions,
) -> Result<VerificationReport> {
    let qubits = g.vertex_count();
    if qubits > MAX_QUBITS {
        return Err(Error::Capacity {
            qubits,
            max: MAX_QUBITS,
        });
    }
    check_chain(g, records, claimed)?;
    let branches = options.branches.clone().unwrap_or_else(|| all_branches(records.len()));
    let initial = prepare_graph_state(g)?;
    let target = prepare_graph_state(claimed)?;
    // Outcomes are always forced, so the generator is never consulted.
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut reports = Vec::with_capacity(branches.len());
    for branch in &branches {
        if branch.len() != records.len() {
            return Err(Error::InconsistentRecords(format!(
                "branch has {} outcomes for {} measurements",
                branch.len(),
                records.len()
            )));
        }
        let start = Instant::now();
        let mut state = initial.clone();
        for (r, &outcome) in records.iter().zip(branch) {
            let (projected, _) = project_x(&state, r.measured_vertex, Some(outcome), &mut rng)?;
            let ops = x_corrections(&r.pre_graph, r.measured_vertex, r.special_neighbor, outcome)?;
            state = apply_corrections(&projected, &ops)?;
        }
        let f = fidelity(&state, &target)?;
        let elapsed = start.elapsed().as_micros() as u64;
        reports.push(BranchReport {
            outcomes: branch.iter().map(|o| o.symbol()).collect(),
            fidelity: f,
            pass: (1.0 - f) <= FIDELITY_TOLERANCE,
            wall_time_us: if options.normalize_time { 0 } else { elapsed },
        });
    }
    let min_fidelity = reports.iter().map(|b| b.fidelity).fold(f64::INFINITY, f64::min);
    let max_fidelity = reports.iter().map(|b| b.fidelity).fold(f64::NEG_INFINITY, f64::max);
    Ok(VerificationReport {
        qubits,
        measurements: records.len(),
        tolerance: FIDELITY_TOLERANCE,
        passed: reports.iter().all(|b| b.pass),
        branches: reports,
        min_fidelity,
        max_fidelity,
    })
}
