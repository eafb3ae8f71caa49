use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::correction::LocalCorrection;
use super::{MAX_QUBITS, NORM_TOLERANCE};
use crate::error::{Error, Result};
use crate::graph::{InterQlanGraph, Vertex};

/// Dense state vector. Qubit `q` is bit `q` of the basis index and stands
/// for vertex `qubit_order[q]`; the order follows the graph's canonical
/// vertex order (clients by QLAN and index, supers last).
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumState {
    amplitudes: Vec<Complex64>,
    qubit_order: Vec<Vertex>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Outcome {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Outcome {
    pub fn sign(self) -> f64 {
        match self {
            Outcome::Plus => 1.0,
            Outcome::Minus => -1.0,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Outcome::Plus => '+',
            Outcome::Minus => '-',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Basis {
    X,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasurementOutcome {
    pub vertex: Vertex,
    pub basis: Basis,
    pub result: Outcome,
    /// Local operators applied afterwards to undo the measurement byproduct.
    pub correction_applied: Vec<LocalCorrection>,
}

pub type Matrix2 = [[Complex64; 2]; 2];

impl QuantumState {
    pub fn from_amplitudes(qubit_order: Vec<Vertex>, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != 1usize << qubit_order.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} amplitudes for {} qubits",
                amplitudes.len(),
                qubit_order.len()
            )));
        }
        let state = QuantumState {
            amplitudes,
            qubit_order,
        };
        let norm = state.norm();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized(norm));
        }
        Ok(state)
    }

    pub fn n_qubits(&self) -> usize {
        self.qubit_order.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn qubit_order(&self) -> &[Vertex] {
        &self.qubit_order
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt()
    }

    pub fn qubit_of(&self, v: Vertex) -> Result<usize> {
        self.qubit_order
            .iter()
            .position(|&u| u == v)
            .ok_or(Error::UnknownVertex(v))
    }

    pub fn inner(&self, other: &QuantumState) -> Result<Complex64> {
        if self.qubit_order != other.qubit_order {
            return Err(Error::DimensionMismatch(
                "states are defined over different qubit orders".into(),
            ));
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn apply_single(&mut self, q: usize, m: &Matrix2) {
        let bit = 1usize << q;
        for x in 0..self.amplitudes.len() {
            if x & bit == 0 {
                let a0 = self.amplitudes[x];
                let a1 = self.amplitudes[x | bit];
                self.amplitudes[x] = m[0][0] * a0 + m[0][1] * a1;
                self.amplitudes[x | bit] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
    }

    pub fn apply_z(&mut self, q: usize) {
        let bit = 1usize << q;
        for (x, a) in self.amplitudes.iter_mut().enumerate() {
            if x & bit != 0 {
                *a = -*a;
            }
        }
    }

    pub fn apply_cz(&mut self, a: usize, b: usize) {
        let mask = (1usize << a) | (1usize << b);
        for (x, amp) in self.amplitudes.iter_mut().enumerate() {
            if x & mask == mask {
                *amp = -*amp;
            }
        }
    }

    /// `⟨ψ| X_v ∏_{u∈N(v)} Z_u |ψ⟩` for the neighborhood of `v` in `g`.
    pub fn stabilizer_expectation(&self, g: &InterQlanGraph, v: Vertex) -> Result<f64> {
        let xq = 1usize << self.qubit_of(v)?;
        let mut zmask = 0usize;
        for u in g.neighbors(v)?.members {
            zmask |= 1 << self.qubit_of(u)?;
        }
        let value: Complex64 = self
            .amplitudes
            .iter()
            .enumerate()
            .map(|(x, a)| {
                let sign = if (x & zmask).count_ones().is_multiple_of(2) {
                    1.0
                } else {
                    -1.0
                };
                self.amplitudes[x ^ xq].conj() * a * sign
            })
            .sum();
        Ok(value.re)
    }

    /// Reduced density matrix of one qubit.
    pub fn single_qubit_marginal(&self, q: usize) -> Matrix2 {
        let bit = 1usize << q;
        let mut rho = [[Complex64::new(0.0, 0.0); 2]; 2];
        for x in 0..self.amplitudes.len() {
            if x & bit == 0 {
                let a0 = self.amplitudes[x];
                let a1 = self.amplitudes[x | bit];
                rho[0][0] += a0 * a0.conj();
                rho[0][1] += a0 * a1.conj();
                rho[1][0] += a1 * a0.conj();
                rho[1][1] += a1 * a1.conj();
            }
        }
        rho
    }

    /// Unnormalized branch `(⟨+| ± ⟨-|)/√2`-projection of qubit `q`, with `q`
    /// removed from the register.
    fn x_branch(&self, q: usize, outcome: Outcome) -> Vec<Complex64> {
        let half = self.amplitudes.len() / 2;
        let low_mask = (1usize << q) - 1;
        let s = outcome.sign();
        (0..half)
            .map(|y| {
                let x0 = ((y & !low_mask) << 1) | (y & low_mask);
                let x1 = x0 | (1 << q);
                (self.amplitudes[x0] + self.amplitudes[x1] * s) * std::f64::consts::FRAC_1_SQRT_2
            })
            .collect()
    }
}

/// `⊗|+⟩` followed by one CZ per edge.
pub fn prepare_graph_state(g: &InterQlanGraph) -> Result<QuantumState> {
    let n = g.vertex_count();
    if n > MAX_QUBITS {
        return Err(Error::Capacity {
            qubits: n,
            max: MAX_QUBITS,
        });
    }
    let order: Vec<Vertex> = g.vertices().collect();
    let dim = 1usize << n;
    let amp = Complex64::new((dim as f64).sqrt().recip(), 0.0);
    let mut state = QuantumState {
        amplitudes: vec![amp; dim],
        qubit_order: order,
    };
    for e in g.edges() {
        let (a, b) = e.endpoints();
        let (qa, qb) = (state.qubit_of(a)?, state.qubit_of(b)?);
        state.apply_cz(qa, qb);
    }
    Ok(state)
}

/// Projects `v` onto an X eigenstate and drops its qubit.
///
/// With `forced = None` the outcome is drawn from the Born probabilities.
/// The returned outcome carries an empty correction list; see
/// [`super::apply_x_corrections`].
pub fn project_x<R: Rng + ?Sized>(
    state: &QuantumState,
    v: Vertex,
    forced: Option<Outcome>,
    rng: &mut R,
) -> Result<(QuantumState, MeasurementOutcome)> {
    let q = state.qubit_of(v)?;
    let outcome = match forced {
        Some(o) => o,
        None => {
            let p_plus: f64 = state.x_branch(q, Outcome::Plus).iter().map(Complex64::norm_sqr).sum();
            if rng.random::<f64>() < p_plus {
                Outcome::Plus
            } else {
                Outcome::Minus
            }
        }
    };
    let mut amplitudes = state.x_branch(q, outcome);
    let norm = amplitudes.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
    if norm < 1e-12 {
        return Err(Error::Internal(format!(
            "X-projection of {v} onto outcome {} has zero norm",
            outcome.symbol()
        )));
    }
    for a in &mut amplitudes {
        *a /= norm;
    }
    let mut qubit_order = state.qubit_order.clone();
    qubit_order.remove(q);
    Ok((
        QuantumState {
            amplitudes,
            qubit_order,
        },
        MeasurementOutcome {
            vertex: v,
            basis: Basis::X,
            result: outcome,
            correction_applied: Vec::new(),
        },
    ))
}

/// Norm of the unnormalized projected branch, before renormalization.
pub fn x_branch_norm(state: &QuantumState, v: Vertex, outcome: Outcome) -> Result<f64> {
    let q = state.qubit_of(v)?;
    Ok(state
        .x_branch(q, outcome)
        .iter()
        .map(Complex64::norm_sqr)
        .sum::<f64>()
        .sqrt())
}
