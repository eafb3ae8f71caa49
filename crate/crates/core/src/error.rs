use thiserror::Error;

use crate::graph::{Edge, Qlan, Vertex};
use crate::lemma::Case;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Coarse classification used by front-ends to pick exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Validation,
    Capacity,
    Internal,
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum Error {
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
    #[error("vertex {0} already present")]
    DuplicateVertex(Vertex),
    #[error("QLAN {0} already has a super-node")]
    DuplicateSuper(Qlan),
    #[error("self-loop at {0}")]
    SelfLoop(Vertex),
    #[error("edge {0} already present")]
    DuplicateEdge(Edge),
    #[error("{0} is a super-node; operation is defined for clients only")]
    SuperVertex(Vertex),
    #[error("graph contains super-node {0}; expected a client-only Inter-QLAN")]
    SuperPresent(Vertex),
    #[error("edge {0} joins two vertices of the same QLAN")]
    IntraQlanEdge(Edge),
    #[error("empty QLAN: QLAN {0} has no clients")]
    EmptyQlan(Qlan),
    #[error("X-measurement requires a neighbor: {0} is isolated")]
    IsolatedMeasurement(Vertex),
    #[error("{k0} is not adjacent to {vertex}")]
    NotAdjacent { vertex: Vertex, k0: Vertex },
    #[error("pipeline expects a Case {expected} augmentation, got Case {found}")]
    WrongCase { expected: Case, found: Case },
    #[error("{0} is not a valid k0 for this augmentation")]
    InvalidK0(Vertex),
    #[error("k0 {0} is a retained client")]
    RetainedK0(Vertex),
    #[error("no eligible k0: every candidate client is retained or detached from the super-node")]
    NoEligibleK0,
    #[error("retained client {0} is adjacent to a super-node")]
    RetainedAdjacentToSuper(Vertex),
    #[error("partial complement requires at least one retained client")]
    NothingRetained,
    #[error("{0} cannot act as super-node: it is not connected to every client of the other QLAN")]
    NotFullyConnected(Vertex),
    #[error("augmented graph invariant violated: {0}")]
    InvalidAugmentation(String),
    #[error("{qubits} qubits exceed the state-vector capacity of {max}; use a smaller scenario")]
    Capacity { qubits: usize, max: usize },
    #[error("state dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),
    #[error("inconsistent measurement records: {0}")]
    InconsistentRecords(String),
    #[error("unknown node {0}")]
    UnknownNode(String),
    #[error("node {0} must have at least one communication qubit")]
    NoCommQubits(String),
    #[error("invalid request: {0}")]
    InvalidRequest(String),
    #[error("scenario mismatch: {0}")]
    ScenarioMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal assertion failed: {0}")]
    Internal(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Capacity { .. } => ErrorKind::Capacity,
            Error::Internal(_) => ErrorKind::Internal,
            _ => ErrorKind::Validation,
        }
    }
}
