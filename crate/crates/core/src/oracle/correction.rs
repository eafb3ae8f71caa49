//! Local byproducts of a Pauli-X measurement on a graph state.
//!
//! Measuring X on vertex `a` with special neighbor `k0 ∈ N(a)` leaves the
//! remaining qubits in `U |G'⟩`, where `G' = τ_k0(τ_a(τ_k0(G)) − a)` and `U`
//! depends on the outcome (Hein, Eisert, Briegel, "Multiparty entanglement in
//! graph states", PRA 69, 062311 (2004); also Hein et al., "Entanglement in
//! graph states and its applications", 2006):
//!
//! | outcome | byproduct `U`                                   |
//! |---------|-------------------------------------------------|
//! | `+1`    | `√(+iY)_k0 · ∏_{b ∈ N(a) − N(k0) − {k0}} Z_b`   |
//! | `−1`    | `√(−iY)_k0 · ∏_{b ∈ N(k0) − N(a) − {a}} Z_b`    |
//!
//! with `√(±iY) = (I ± iY)/√2` and neighborhoods taken in the graph *before*
//! the measurement. The correction applies `U†`: the listed Z's and
//! `√(∓iY)` on `k0`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::state::{Matrix2, Outcome, QuantumState};
use crate::error::{Error, Result};
use crate::graph::{InterQlanGraph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LocalOp {
    Z,
    /// `(I + iY)/√2`
    SqrtPlusIY,
    /// `(I − iY)/√2`
    SqrtMinusIY,
}

impl LocalOp {
    pub fn matrix(self) -> Matrix2 {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let r = |x: f64| Complex64::new(x, 0.0);
        match self {
            LocalOp::Z => [[r(1.0), r(0.0)], [r(0.0), r(-1.0)]],
            // iY = [[0, 1], [-1, 0]]
            LocalOp::SqrtPlusIY => [[r(h), r(h)], [r(-h), r(h)]],
            LocalOp::SqrtMinusIY => [[r(h), r(-h)], [r(h), r(h)]],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalCorrection {
    pub vertex: Vertex,
    pub op: LocalOp,
}

/// Operators that undo the byproduct of measuring `a` (special neighbor
/// `k0`) in `g_pre` with the given outcome.
pub fn x_corrections(g_pre: &InterQlanGraph, a: Vertex, k0: Vertex, outcome: Outcome) -> Result<Vec<LocalCorrection>> {
    let na = g_pre.neighbors(a)?.members;
    let nk = g_pre.neighbors(k0)?.members;
    if !na.contains(&k0) {
        return Err(Error::NotAdjacent { vertex: a, k0 });
    }
    let (k0_op, z_targets): (LocalOp, Vec<Vertex>) = match outcome {
        Outcome::Plus => (
            LocalOp::SqrtMinusIY,
            na.difference(&nk).copied().filter(|&b| b != k0).collect(),
        ),
        Outcome::Minus => (
            LocalOp::SqrtPlusIY,
            nk.difference(&na).copied().filter(|&b| b != a).collect(),
        ),
    };
    let mut ops = vec![LocalCorrection { vertex: k0, op: k0_op }];
    ops.extend(
        z_targets
            .into_iter()
            .map(|vertex| LocalCorrection { vertex, op: LocalOp::Z }),
    );
    Ok(ops)
}

pub fn apply_corrections(state: &QuantumState, ops: &[LocalCorrection]) -> Result<QuantumState> {
    let mut out = state.clone();
    for c in ops {
        let q = out.qubit_of(c.vertex)?;
        match c.op {
            LocalOp::Z => out.apply_z(q),
            op => out.apply_single(q, &op.matrix()),
        }
    }
    Ok(out)
}

/// Applies the correction for one X-measurement so that the result is the
/// graph state of `measure_x(g_pre, a, k0)`.
pub fn apply_x_corrections(
    state: &QuantumState,
    g_pre: &InterQlanGraph,
    a: Vertex,
    k0: Vertex,
    outcome: Outcome,
) -> Result<QuantumState> {
    apply_corrections(state, &x_corrections(g_pre, a, k0, outcome)?)
}
