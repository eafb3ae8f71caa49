//! Brute-force state-vector verifier for the graph-level measurement rules.
//!
//! States are dense amplitude vectors, so everything here is limited to
//! [`MAX_QUBITS`] qubits.

mod correction;
mod state;
mod verify;

pub use correction::{apply_corrections, apply_x_corrections, x_corrections, LocalCorrection, LocalOp};
pub use state::{
    prepare_graph_state, project_x, x_branch_norm, Basis, Matrix2, MeasurementOutcome, Outcome, QuantumState,
};
pub use verify::{verify_pipeline, BranchReport, VerificationReport, VerifyOptions};

use crate::error::Result;

pub const MAX_QUBITS: usize = 14;
pub const FIDELITY_TOLERANCE: f64 = 1e-9;
pub const NORM_TOLERANCE: f64 = 1e-10;

/// `|⟨a|b⟩|`, clamped to `[0, 1]`.
pub fn fidelity(a: &QuantumState, b: &QuantumState) -> Result<f64> {
    Ok(a.inner(b)?.norm().clamp(0.0, 1.0))
}
